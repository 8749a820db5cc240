//! Estimation of the BML shapes with `p` known and the data standardized.
//!
//! For one observation the likelihood splits into an α-only term and a
//! β-only term, each maximized in closed form. A sample is handled by
//! averaging the per-observation estimates, weighting pair `i` by the full
//! sample likelihood evaluated at `(α̂ᵢ, β̂ᵢ)`.

use std::f64::consts::LN_2;

use serde::Serialize;

use crate::error::{positive, unit_closed, Error, Result};

/// Closed-form maximizers `(α̂, β̂)` for a single standardized observation.
pub fn mle_single(x: f64) -> (f64, f64) {
    if x < 0.0 {
        (-1.0 / (x - LN_2), -1.0 / (-0.5 * x.exp()).ln_1p())
    } else {
        (-1.0 / (-0.5 * (-x).exp()).ln_1p(), 1.0 / (x + LN_2))
    }
}

/// The two additive pieces of the single-observation likelihood at `x`:
/// the α term and the β term.
pub fn single_terms(x: f64, alpha: f64, beta: f64, p: f64) -> (f64, f64) {
    if x < 0.0 {
        let e = 0.5 * x.exp();
        (
            p * alpha * e.powf(alpha),
            (1.0 - p) * beta * (1.0 - e).powf(beta - 1.0) * e,
        )
    } else {
        let e = 0.5 * (-x).exp();
        (
            p * alpha * (1.0 - e).powf(alpha - 1.0) * e,
            (1.0 - p) * beta * e.powf(beta),
        )
    }
}

/// Per-observation logs reused across every candidate pair.
#[derive(Debug, Clone, Copy)]
struct Obs {
    negative: bool,
    /// `ln(e^{-|x|}/2)`
    ln_e: f64,
    /// `ln(1 - e^{-|x|}/2)`
    ln_other: f64,
}

impl Obs {
    fn new(x: f64) -> Self {
        Self {
            negative: x < 0.0,
            ln_e: -x.abs() - LN_2,
            ln_other: (-0.5 * (-x.abs()).exp()).ln_1p(),
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Shapes {
    alpha: f64,
    beta: f64,
    ln_alpha: f64,
    ln_beta: f64,
    ln_p: f64,
    ln_q: f64,
}

impl Shapes {
    fn new(alpha: f64, beta: f64, p: f64) -> Self {
        Self {
            alpha,
            beta,
            ln_alpha: alpha.ln(),
            ln_beta: beta.ln(),
            ln_p: p.ln(),
            ln_q: (-p).ln_1p(),
        }
    }

    fn ln_pdf(&self, o: &Obs) -> f64 {
        let (a, b) = if o.negative {
            (
                self.ln_alpha + self.alpha * o.ln_e,
                self.ln_beta + (self.beta - 1.0) * o.ln_other + o.ln_e,
            )
        } else {
            (
                self.ln_alpha + (self.alpha - 1.0) * o.ln_other + o.ln_e,
                self.ln_beta + self.beta * o.ln_e,
            )
        };
        log_add(self.ln_p + a, self.ln_q + b)
    }
}

/// `ln(e^a + e^b)`, with `-inf` for an absent term.
fn log_add(a: f64, b: f64) -> f64 {
    let m = a.max(b);
    if m == f64::NEG_INFINITY {
        return m;
    }
    m + ((a - m).exp() + (b - m).exp()).ln()
}

fn check_data(data: &[f64]) -> Result<()> {
    if data.is_empty() {
        return Err(Error::Precondition("data must not be empty".into()));
    }
    if let Some(bad) = data.iter().find(|x| !x.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "data".into(),
            value: *bad,
            reason: "observations must be finite",
        });
    }
    Ok(())
}

fn sum_ln(obs: &[Obs], s: &Shapes) -> f64 {
    obs.iter().map(|o| s.ln_pdf(o)).sum()
}

/// `Σ ln g(xᵢ | α, β, p)` for standardized data. A zero density gives `-inf`.
pub fn log_likelihood(data: &[f64], alpha: f64, beta: f64, p: f64) -> Result<f64> {
    check_data(data)?;
    positive("alpha", alpha)?;
    positive("beta", beta)?;
    unit_closed("p", p)?;
    let obs: Vec<Obs> = data.iter().map(|&x| Obs::new(x)).collect();
    Ok(sum_ln(&obs, &Shapes::new(alpha, beta, p)))
}

/// Normalizes log-weights by shifting to the maximum before exponentiating.
pub fn normalize_log_weights(log_w: &[f64]) -> Result<Vec<f64>> {
    let m = log_w.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !m.is_finite() {
        return Err(Error::DegenerateFit(
            "every candidate pair has zero or undefined likelihood".into(),
        ));
    }
    let raw: Vec<f64> = log_w.iter().map(|l| (l - m).exp()).collect();
    let total: f64 = raw.iter().sum();
    Ok(raw.into_iter().map(|w| w / total).collect())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitResult {
    pub alpha_hat: f64,
    pub beta_hat: f64,
    pub weights: Vec<f64>,
    pub per_obs_estimates: Vec<(f64, f64)>,
    pub log_likelihood_at_estimate: f64,
}

/// Weighted combination of the single-observation estimates.
pub fn fit_weighted(data: &[f64], p: f64) -> Result<FitResult> {
    check_data(data)?;
    unit_closed("p", p)?;
    let obs: Vec<Obs> = data.iter().map(|&x| Obs::new(x)).collect();
    let per_obs: Vec<(f64, f64)> = data.iter().map(|&x| mle_single(x)).collect();
    let log_w: Vec<f64> = per_obs
        .iter()
        .map(|&(a, b)| {
            if a.is_finite() && b.is_finite() {
                sum_ln(&obs, &Shapes::new(a, b, p))
            } else {
                f64::NEG_INFINITY
            }
        })
        .collect();
    let weights = normalize_log_weights(&log_w)?;
    let mut alpha_hat = 0.0;
    let mut beta_hat = 0.0;
    for (w, (a, b)) in weights.iter().zip(&per_obs) {
        if *w > 0.0 {
            alpha_hat += w * a;
            beta_hat += w * b;
        }
    }
    let ll = sum_ln(&obs, &Shapes::new(alpha_hat, beta_hat, p));
    Ok(FitResult {
        alpha_hat,
        beta_hat,
        weights,
        per_obs_estimates: per_obs,
        log_likelihood_at_estimate: ll,
    })
}

/// Maps raw data to the standard scale, `(x - mu)/sigma`.
pub fn standardize(data: &[f64], mu: f64, sigma: f64) -> Result<Vec<f64>> {
    positive("sigma", sigma)?;
    Ok(data.iter().map(|x| (x - mu) / sigma).collect())
}
