//! Monte-Carlo recovery of the BML shapes.
//!
//! Replication `i` draws its sample from its own substream
//! `substream_seed(seed, i)`, and the estimates are reduced in index order
//! with compensated summation. The result is therefore identical whatever
//! the number of worker threads.

use rayon::prelude::*;
use serde::Serialize;

use crate::bml::{self, BmlParams};
use crate::error::{Error, Result};
use crate::estimate::fit_weighted;
use crate::rng::substream_seed;

/// Environment variable capping the worker count.
pub const THREADS_ENV: &str = "GENLAP_THREADS";

/// Column order for tabular output.
pub const CSV_HEADER: [&str; 8] = [
    "n",
    "k",
    "alpha",
    "alpha_hat",
    "mse_alpha",
    "beta",
    "beta_hat",
    "mse_beta",
];

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StudyConfig {
    pub n: usize,
    pub k: usize,
    pub alpha: f64,
    pub beta: f64,
    pub p: f64,
    pub seed: u64,
}

impl StudyConfig {
    pub fn validate(&self) -> Result<BmlParams> {
        if self.n == 0 || self.k == 0 {
            return Err(Error::Precondition(format!(
                "study needs n >= 1 and k >= 1, got n = {}, k = {}",
                self.n, self.k
            )));
        }
        BmlParams::new(self.alpha, self.beta, self.p)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StudyRow {
    pub n: usize,
    pub k: usize,
    #[serde(rename = "alpha")]
    pub alpha_true: f64,
    #[serde(rename = "alpha_hat")]
    pub alpha_hat_mean: f64,
    pub mse_alpha: f64,
    #[serde(rename = "beta")]
    pub beta_true: f64,
    #[serde(rename = "beta_hat")]
    pub beta_hat_mean: f64,
    pub mse_beta: f64,
}

impl StudyRow {
    /// Values in [`CSV_HEADER`] order.
    pub fn values(&self) -> [f64; 8] {
        [
            self.n as f64,
            self.k as f64,
            self.alpha_true,
            self.alpha_hat_mean,
            self.mse_alpha,
            self.beta_true,
            self.beta_hat_mean,
            self.mse_beta,
        ]
    }
}

/// Neumaier's compensated sum, taken in slice order.
pub fn compensated_sum(xs: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0_f64;
    let mut comp = 0.0_f64;
    for x in xs {
        let t = sum + x;
        if sum.abs() >= x.abs() {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Mean of `est` and its MSE about `truth`, the latter computed directly
/// and as variance plus squared bias.
pub fn mse_two_ways(est: &[f64], truth: f64) -> (f64, f64, f64) {
    let k = est.len() as f64;
    let mean = compensated_sum(est.iter().copied()) / k;
    let direct = compensated_sum(est.iter().map(|e| (e - truth) * (e - truth))) / k;
    let var = compensated_sum(est.iter().map(|e| (e - mean) * (e - mean))) / k;
    let bias = mean - truth;
    (mean, direct, var + bias * bias)
}

/// Worker count from the argument, else from `GENLAP_THREADS`.
pub fn resolve_threads(threads: Option<usize>) -> Option<usize> {
    threads.or_else(|| {
        std::env::var(THREADS_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&t| t > 0)
    })
}

fn with_pool<T: Send>(threads: Option<usize>, job: impl FnOnce() -> T + Send) -> Result<T> {
    match resolve_threads(threads) {
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .map_err(|e| Error::Precondition(format!("thread pool: {e}")))?;
            Ok(pool.install(job))
        }
        None => Ok(job()),
    }
}

fn replicate(params: BmlParams, n: usize, seed: u64, i: usize) -> Result<(f64, f64)> {
    let data = bml::sample(params, n, substream_seed(seed, i as u64))?;
    let fit = fit_weighted(&data, params.p).map_err(|e| match e {
        Error::DegenerateFit(msg) => Error::DegenerateFit(format!("replication {i}: {msg}")),
        other => other,
    })?;
    Ok((fit.alpha_hat, fit.beta_hat))
}

/// Runs `k` replications of size `n` and summarizes them.
pub fn run_study(config: StudyConfig) -> Result<StudyRow> {
    run_study_with_threads(config, None)
}

/// [`run_study`] on a pool of `threads` workers (or `GENLAP_THREADS`).
pub fn run_study_with_threads(config: StudyConfig, threads: Option<usize>) -> Result<StudyRow> {
    let params = config.validate()?;
    let estimates: Vec<(f64, f64)> = with_pool(threads, || {
        (0..config.k)
            .into_par_iter()
            .map(|i| replicate(params, config.n, config.seed, i))
            .collect::<Result<Vec<_>>>()
    })??;
    let (alphas, betas): (Vec<f64>, Vec<f64>) = estimates.into_iter().unzip();
    let (alpha_hat_mean, mse_alpha, _) = mse_two_ways(&alphas, config.alpha);
    let (beta_hat_mean, mse_beta, _) = mse_two_ways(&betas, config.beta);
    Ok(StudyRow {
        n: config.n,
        k: config.k,
        alpha_true: config.alpha,
        alpha_hat_mean,
        mse_alpha,
        beta_true: config.beta,
        beta_hat_mean,
        mse_beta,
    })
}

/// One row per sample size, in input order, all sharing `seed`.
#[allow(clippy::too_many_arguments)]
pub fn run_table(
    n_list: &[usize],
    k: usize,
    alpha: f64,
    beta: f64,
    p: f64,
    seed: u64,
    threads: Option<usize>,
) -> Result<Vec<StudyRow>> {
    n_list
        .iter()
        .map(|&n| {
            run_study_with_threads(
                StudyConfig {
                    n,
                    k,
                    alpha,
                    beta,
                    p,
                    seed,
                },
                threads,
            )
        })
        .collect()
}
