//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use genlap::registry::ParamMap;

use crate::error::{CliError, CliResult};
use crate::output::Format;

#[derive(Debug, Parser)]
#[command(
    name = "genlap",
    version,
    about = "Generated distributions and the beta-mixture Laplace model"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate pdf, cdf, survival and hazard over a grid.
    Eval(EvalArgs),
    /// Draw a seeded sample, one value per line.
    Sample(SampleArgs),
    /// Fit BML shapes to data with known p, location and scale.
    Fit(FitArgs),
    /// Monte-Carlo recovery study of the BML shape estimator.
    Simulate(SimulateArgs),
    /// Evaluate the BML moment generating function.
    Mgf(MgfArgs),
    /// List the registered distributions and generators.
    List,
}

/// Distribution name and its parameters.
#[derive(Debug, Args)]
pub struct DistArgs {
    /// Registered name, or `base+generator`
    #[arg(long)]
    pub dist: String,
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub beta: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub p: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub mu: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub sigma: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub a: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub b: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub c: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub lambda: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub theta: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub phi: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub gamma: Option<f64>,
    /// Any other parameter, as NAME=VALUE (repeatable)
    #[arg(long = "param", value_name = "NAME=VALUE", allow_hyphen_values = true)]
    pub extra: Vec<String>,
}

impl DistArgs {
    pub fn params(&self) -> CliResult<ParamMap> {
        let named = [
            ("alpha", self.alpha),
            ("beta", self.beta),
            ("p", self.p),
            ("mu", self.mu),
            ("sigma", self.sigma),
            ("a", self.a),
            ("b", self.b),
            ("c", self.c),
            ("lambda", self.lambda),
            ("theta", self.theta),
            ("phi", self.phi),
            ("gamma", self.gamma),
        ];
        let mut map: ParamMap = named
            .iter()
            .filter_map(|(k, v)| v.map(|v| (k.to_string(), v)))
            .collect();
        for kv in &self.extra {
            let (k, v) = kv.split_once('=').ok_or_else(|| {
                CliError::Usage(format!("--param expects NAME=VALUE, got '{kv}'"))
            })?;
            let v: f64 = v
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("--param {k}: '{v}' is not a number")))?;
            if map.insert(k.trim().to_string(), v).is_some() {
                return Err(CliError::Usage(format!("parameter '{k}' given twice")));
            }
        }
        Ok(map)
    }
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Write here instead of standard output
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[command(flatten)]
    pub dist: DistArgs,
    /// MIN:MAX:STEP
    #[arg(long, allow_hyphen_values = true)]
    pub grid: String,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[command(flatten)]
    pub dist: DistArgs,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub seed: u64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    /// File of observations, one per line; `-` reads standard input
    #[arg(long)]
    pub input: PathBuf,
    /// Known mixing weight
    #[arg(long)]
    pub p: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub mu: f64,
    #[arg(long, default_value_t = 1.0)]
    pub sigma: f64,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Comma-separated sample sizes
    #[arg(long, value_delimiter = ',', required = true)]
    pub n_list: Vec<usize>,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub alpha: f64,
    #[arg(long)]
    pub beta: f64,
    #[arg(long)]
    pub p: f64,
    #[arg(long)]
    pub seed: u64,
    /// Worker threads; defaults to GENLAP_THREADS, then to all cores
    #[arg(long)]
    pub threads: Option<usize>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct MgfArgs {
    #[arg(long)]
    pub alpha: f64,
    #[arg(long)]
    pub beta: f64,
    #[arg(long)]
    pub p: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub mu: f64,
    #[arg(long, default_value_t = 1.0)]
    pub sigma: f64,
    /// Comma-separated arguments
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        required = true
    )]
    pub t: Vec<f64>,
    #[command(flatten)]
    pub out: OutputArgs,
}

/// Points of a `MIN:MAX:STEP` grid, endpoints included.
pub fn parse_grid(text: &str) -> CliResult<Vec<f64>> {
    let bad = |why: &str| CliError::Usage(format!("grid '{text}': {why}"));
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(bad("expected MIN:MAX:STEP"));
    }
    let num = |s: &str| s.trim().parse::<f64>().map_err(|_| bad("not a number"));
    let (lo, hi, step) = (num(parts[0])?, num(parts[1])?, num(parts[2])?);
    if !(lo.is_finite() && hi.is_finite() && step.is_finite()) {
        return Err(bad("bounds and step must be finite"));
    }
    if step <= 0.0 {
        return Err(bad("step must be positive"));
    }
    if hi < lo {
        return Err(bad("MAX is below MIN"));
    }
    let count = ((hi - lo) / step * (1.0 + 1e-12)).floor() as usize + 1;
    if count > 10_000_000 {
        return Err(bad("too many points"));
    }
    Ok((0..count)
        .map(|i| grid_point(parts[2], lo, step, i))
        .collect())
}

/// `lo + i·step`, computed in scaled integers when the step is a short
/// decimal so that `-5:5:0.1` yields `-0.2` rather than `-0.19999999999999`.
fn grid_point(step_text: &str, lo: f64, step: f64, i: usize) -> f64 {
    let places = step_text
        .trim()
        .split_once('.')
        .map_or(0, |(_, frac)| frac.len()) as i32;
    if places <= 12 {
        let scale = 10f64.powi(places);
        let (l, s) = (lo * scale, step * scale);
        if (l - l.round()).abs() < 1e-6 && (s - s.round()).abs() < 1e-9 && l.abs() < 1e15 {
            return (l.round() + i as f64 * s.round()) / scale;
        }
    }
    lo + i as f64 * step
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids() {
        assert_eq!(parse_grid("-5:5:0.1").unwrap().len(), 101);
        assert_eq!(parse_grid("0:0:1").unwrap(), vec![0.0]);
        assert_eq!(
            parse_grid("0:1:0.25").unwrap(),
            vec![0.0, 0.25, 0.5, 0.75, 1.0]
        );
        assert_eq!(parse_grid("0:0.9:0.5").unwrap().len(), 2);
        let g = parse_grid("-5:5:0.1").unwrap();
        assert_eq!(g[48], -0.2);
        assert_eq!(g[50], 0.0);
        assert_eq!(g[100], 5.0);
        assert_eq!(parse_grid("0.05:0.3:0.05").unwrap()[5], 0.3);
        for bad in ["0:1", "0:1:0", "0:1:-1", "1:0:0.1", "a:1:1", "0:inf:1"] {
            assert!(parse_grid(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn extra_params() {
        let cli = Cli::try_parse_from([
            "genlap",
            "eval",
            "--dist",
            "beta-pareto",
            "--alpha",
            "2",
            "--beta",
            "3",
            "--theta",
            "1",
            "--param",
            "k=2.5",
            "--grid",
            "-1:1:1",
        ])
        .unwrap();
        let Command::Eval(e) = cli.command else {
            panic!()
        };
        let m = e.dist.params().unwrap();
        assert_eq!(m["k"], 2.5);
        assert_eq!(m.len(), 4);
        assert_eq!(e.grid, "-1:1:1");
    }
}
