use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::Path;

use serde_json::json;

use genlap::bml::{Bml, BmlParams};
use genlap::estimate::{fit_weighted, standardize};
use genlap::registry::Registry;
use genlap::simstudy::{run_table, StudyConfig, CSV_HEADER};

use crate::args::{parse_grid, Command, EvalArgs, FitArgs, MgfArgs, SampleArgs, SimulateArgs};
use crate::error::{CliError, CliResult};
use crate::output::{json_num, write_json, write_table, Cell, Format};

pub fn run(command: Command) -> CliResult<()> {
    match command {
        Command::Eval(a) => eval(a),
        Command::Sample(a) => sample(a),
        Command::Fit(a) => fit(a),
        Command::Simulate(a) => simulate(a),
        Command::Mgf(a) => mgf(a),
        Command::List => list(),
    }
}

fn open_output(path: Option<&Path>) -> CliResult<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|e| {
            CliError::Usage(format!("cannot write {}: {e}", p.display()))
        })?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn finish(mut out: Box<dyn Write>) -> CliResult<()> {
    out.flush()?;
    Ok(())
}

fn eval(a: EvalArgs) -> CliResult<()> {
    let grid = parse_grid(&a.grid)?;
    let model = Registry::builtin().model(&a.dist.dist, &a.dist.params()?)?;
    let rows: Vec<Vec<Cell>> = grid
        .iter()
        .map(|&x| {
            let hazard = model.hazard(x).unwrap_or(f64::NAN);
            vec![
                Cell::Real(x),
                Cell::Real(model.pdf(x)),
                Cell::Real(model.cdf(x)),
                Cell::Real(model.sf(x)),
                Cell::Real(hazard),
            ]
        })
        .collect();
    let mut out = open_output(a.out.output.as_deref())?;
    write_table(
        &mut out,
        a.out.format,
        &["x", "pdf", "cdf", "survival", "hazard"],
        &rows,
    )?;
    finish(out)
}

fn sample(a: SampleArgs) -> CliResult<()> {
    let model = Registry::builtin().model(&a.dist.dist, &a.dist.params()?)?;
    let xs = model.sample(a.n, a.seed)?;
    let mut out = open_output(a.out.output.as_deref())?;
    match a.out.format {
        Format::Csv => {
            for x in &xs {
                writeln!(out, "{}", crate::output::fmt_g(*x))?;
            }
        }
        Format::Json => write_json(&mut out, &xs.iter().map(|&x| json_num(x)).collect())?,
    }
    finish(out)
}

/// Reads one finite real per non-blank line.
pub fn read_observations(path: &Path) -> CliResult<Vec<f64>> {
    let mut text = String::new();
    if path == Path::new("-") {
        io::stdin().read_to_string(&mut text)?;
    } else {
        File::open(path)
            .and_then(|mut f| f.read_to_string(&mut text))
            .map_err(|e| CliError::Data(format!("cannot read {}: {e}", path.display())))?;
    }
    let mut data = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let x: f64 = line
            .parse()
            .map_err(|_| CliError::Data(format!("line {}: '{line}' is not a number", i + 1)))?;
        if !x.is_finite() {
            return Err(CliError::Data(format!(
                "line {}: value is not finite",
                i + 1
            )));
        }
        data.push(x);
    }
    if data.is_empty() {
        return Err(CliError::Data(format!(
            "{}: no observations",
            path.display()
        )));
    }
    Ok(data)
}

fn fit(a: FitArgs) -> CliResult<()> {
    let raw = read_observations(&a.input)?;
    let data = standardize(&raw, a.mu, a.sigma)?;
    let r = fit_weighted(&data, a.p)?;
    let doc = json!({
        "alpha_hat": json_num(r.alpha_hat),
        "beta_hat": json_num(r.beta_hat),
        "n": data.len(),
        "p": json_num(a.p),
        "mu": json_num(a.mu),
        "sigma": json_num(a.sigma),
        "log_likelihood": json_num(r.log_likelihood_at_estimate - data.len() as f64 * a.sigma.ln()),
    });
    let mut out = open_output(a.output.as_deref())?;
    write_json(&mut out, &doc)?;
    finish(out)
}

fn simulate(a: SimulateArgs) -> CliResult<()> {
    for &n in &a.n_list {
        StudyConfig {
            n,
            k: a.k,
            alpha: a.alpha,
            beta: a.beta,
            p: a.p,
            seed: a.seed,
        }
        .validate()?;
    }
    if a.threads == Some(0) {
        return Err(CliError::Usage("--threads must be at least 1".into()));
    }
    let table = run_table(&a.n_list, a.k, a.alpha, a.beta, a.p, a.seed, a.threads)?;
    let rows: Vec<Vec<Cell>> = table
        .iter()
        .map(|r| {
            vec![
                Cell::Int(r.n as u64),
                Cell::Int(r.k as u64),
                Cell::Real(r.alpha_true),
                Cell::Real(r.alpha_hat_mean),
                Cell::Real(r.mse_alpha),
                Cell::Real(r.beta_true),
                Cell::Real(r.beta_hat_mean),
                Cell::Real(r.mse_beta),
            ]
        })
        .collect();
    let mut out = open_output(a.out.output.as_deref())?;
    write_table(&mut out, a.out.format, &CSV_HEADER, &rows)?;
    finish(out)
}

fn mgf(a: MgfArgs) -> CliResult<()> {
    let d = Bml::new(BmlParams::with_location_scale(
        a.alpha, a.beta, a.p, a.mu, a.sigma,
    )?)?;
    let rows =
        a.t.iter()
            .map(|&t| Ok(vec![Cell::Real(t), Cell::Real(d.mgf(t)?)]))
            .collect::<CliResult<Vec<_>>>()?;
    let mut out = open_output(a.out.output.as_deref())?;
    write_table(&mut out, a.out.format, &["t", "mgf"], &rows)?;
    finish(out)
}

fn list() -> CliResult<()> {
    let r = Registry::builtin();
    let mut out = open_output(None)?;
    writeln!(out, "distributions:")?;
    for name in r.model_names() {
        let params: Vec<String> = r
            .model_params(name)?
            .iter()
            .map(|s| match s.default {
                Some(v) => format!("{}={}", s.name, crate::output::fmt_g(v)),
                None => s.name.to_string(),
            })
            .collect();
        writeln!(out, "  {name} ({})", params.join(", "))?;
    }
    writeln!(out, "generators:")?;
    for name in r.generator_names() {
        writeln!(out, "  {name}")?;
    }
    writeln!(out, "compose with --dist BASE+GENERATOR, e.g. laplace+bm")?;
    finish(out)
}
