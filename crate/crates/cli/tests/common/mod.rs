#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

pub fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_genlap"));
    c.env_remove("GENLAP_THREADS");
    c
}

pub fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

pub fn run_with_threads(args: &[&str], threads: &str) -> Output {
    bin()
        .env("GENLAP_THREADS", threads)
        .args(args)
        .output()
        .expect("binary runs")
}

pub fn stdout(o: &Output) -> String {
    assert!(
        o.status.success(),
        "exit {:?}: {}",
        o.status.code(),
        String::from_utf8_lossy(&o.stderr)
    );
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

pub fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("golden")
        .join(name)
}

/// Named golden cases: file name and the arguments that produce it.
pub const GOLDEN: &[(&str, &[&str])] = &[
    (
        "sample_bml.txt",
        &[
            "sample", "--dist", "bml", "--alpha", "2", "--beta", "3", "--p", "0.5", "--n", "5",
            "--seed", "42",
        ],
    ),
    (
        "sample_laplace_kumaraswamy.txt",
        &[
            "sample",
            "--dist",
            "laplace+kumaraswamy",
            "--a",
            "2",
            "--b",
            "0.5",
            "--n",
            "20",
            "--seed",
            "7",
        ],
    ),
    (
        "eval_bml.csv",
        &[
            "eval", "--dist", "bml", "--alpha", "2", "--beta", "3", "--p", "0.5", "--grid",
            "-3:3:0.5",
        ],
    ),
    (
        "simulate_small.csv",
        &[
            "simulate", "--n-list", "5,20", "--k", "50", "--alpha", "1", "--beta", "2", "--p",
            "0.5", "--seed", "42",
        ],
    ),
];

/// Compares `bytes` with the stored golden file. Setting `GENLAP_BLESS=1`
/// rewrites the file instead.
pub fn check_golden(name: &str, bytes: &[u8]) -> Result<(), String> {
    let path = golden_path(name);
    if std::env::var_os("GENLAP_BLESS").is_some() {
        std::fs::write(&path, bytes).map_err(|e| e.to_string())?;
        return Ok(());
    }
    let want = std::fs::read(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    if want == bytes {
        Ok(())
    } else {
        Err(format!("{name} differs from golden output"))
    }
}
