//! The beta-mixture Laplace law, BML(α, β, p) with location μ and scale σ.
//!
//! It is the standard Laplace base composed with the generator
//! `p·Beta(α, 1) + (1 - p)·Beta(1, β)`. With `z = (x - μ)/σ` and `F` the
//! standard Laplace CDF, the standardized density is
//!
//! ```text
//! z < 0:  p α (e^z/2)^α + (1-p) β (1 - e^z/2)^(β-1) e^z/2
//! z >= 0: p α (1 - e^-z/2)^(α-1) e^-z/2 + (1-p) β (e^-z/2)^β
//! ```

use std::f64::consts::LN_2;

use serde::{Deserialize, Serialize};

use crate::error::{finite, positive, unit_closed, Error, Result};
use crate::framework::{require_count, Univariate};
use crate::rng;
use crate::specfun::{gen_binom, inc_beta_split, ln_beta_unchecked, RealInterval};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BmlParams {
    pub alpha: f64,
    pub beta: f64,
    pub p: f64,
    #[serde(default)]
    pub mu: f64,
    #[serde(default = "unit")]
    pub sigma: f64,
}

fn unit() -> f64 {
    1.0
}

impl BmlParams {
    /// Standard form, `mu = 0` and `sigma = 1`.
    pub fn new(alpha: f64, beta: f64, p: f64) -> Result<Self> {
        Self::with_location_scale(alpha, beta, p, 0.0, 1.0)
    }

    pub fn with_location_scale(alpha: f64, beta: f64, p: f64, mu: f64, sigma: f64) -> Result<Self> {
        Ok(Self {
            alpha: positive("alpha", alpha)?,
            beta: positive("beta", beta)?,
            p: unit_closed("p", p)?,
            mu: finite("mu", mu)?,
            sigma: positive("sigma", sigma)?,
        })
    }

    pub fn validate(self) -> Result<Self> {
        Self::with_location_scale(self.alpha, self.beta, self.p, self.mu, self.sigma)
    }
}

/// The open interval of `t` on which the standardized MGF is finite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MgfDomain {
    pub lo: f64,
    pub hi: f64,
}

impl MgfDomain {
    pub fn new(alpha: f64, beta: f64) -> Self {
        Self {
            lo: -alpha.min(1.0),
            hi: beta.min(1.0),
        }
    }

    pub fn contains(&self, t: f64) -> bool {
        self.lo < t && t < self.hi
    }
}

/// Distance from a domain endpoint below which the MGF is reported as a range
/// condition rather than a huge number.
pub const MGF_EDGE: f64 = 1e-9;

/// Left and right formulas of the density and CDF, both evaluated at `x = mu`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchValues {
    pub pdf_left: f64,
    pub pdf_right: f64,
    pub cdf_left: f64,
    pub cdf_right: f64,
}

/// A truncated series evaluation and the size of its last retained terms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub value: f64,
    pub truncation_estimate: f64,
}

/// A BML law with validated parameters.
#[derive(Debug, Clone, Copy)]
pub struct Bml {
    params: BmlParams,
}

impl Bml {
    pub fn new(params: BmlParams) -> Result<Self> {
        Ok(Self {
            params: params.validate()?,
        })
    }

    pub fn params(&self) -> BmlParams {
        self.params
    }

    fn z(&self, x: f64) -> f64 {
        (x - self.params.mu) / self.params.sigma
    }

    /// `p·a + (1 - p)·b`, dropping a term whose weight is exactly zero.
    fn mix(&self, a: f64, b: f64) -> f64 {
        let p = self.params.p;
        if p == 1.0 {
            a
        } else if p == 0.0 {
            b
        } else {
            p * a + (1.0 - p) * b
        }
    }

    // z < 0 formulas. `e = e^z / 2` is the base CDF there.
    fn pdf_left(&self, z: f64) -> f64 {
        let BmlParams { alpha, beta, .. } = self.params;
        let ln_e = z - LN_2;
        let ln_s = (-0.5 * z.exp()).ln_1p();
        self.mix(
            alpha * (alpha * ln_e).exp(),
            beta * ((beta - 1.0) * ln_s + ln_e).exp(),
        )
    }

    fn cdf_left(&self, z: f64) -> f64 {
        let BmlParams { alpha, beta, .. } = self.params;
        let ln_e = z - LN_2;
        let ln_s = (-0.5 * z.exp()).ln_1p();
        self.mix((alpha * ln_e).exp(), -(beta * ln_s).exp_m1())
    }

    fn sf_left(&self, z: f64) -> f64 {
        let BmlParams { alpha, beta, .. } = self.params;
        let ln_e = z - LN_2;
        let ln_s = (-0.5 * z.exp()).ln_1p();
        self.mix(-(alpha * ln_e).exp_m1(), (beta * ln_s).exp())
    }

    // z >= 0 formulas. `e = e^-z / 2` is the base survival there.
    fn pdf_right(&self, z: f64) -> f64 {
        let BmlParams { alpha, beta, .. } = self.params;
        let ln_e = -z - LN_2;
        let ln_f = (-0.5 * (-z).exp()).ln_1p();
        self.mix(
            alpha * ((alpha - 1.0) * ln_f + ln_e).exp(),
            beta * (beta * ln_e).exp(),
        )
    }

    fn cdf_right(&self, z: f64) -> f64 {
        let BmlParams { alpha, beta, .. } = self.params;
        let ln_e = -z - LN_2;
        let ln_f = (-0.5 * (-z).exp()).ln_1p();
        self.mix((alpha * ln_f).exp(), -(beta * ln_e).exp_m1())
    }

    fn sf_right(&self, z: f64) -> f64 {
        let BmlParams { alpha, beta, .. } = self.params;
        let ln_e = -z - LN_2;
        let ln_f = (-0.5 * (-z).exp()).ln_1p();
        self.mix(-(alpha * ln_f).exp_m1(), (beta * ln_e).exp())
    }

    /// Both branch formulas evaluated at the location `mu`.
    pub fn branch_values_at_mu(&self) -> BranchValues {
        let s = self.params.sigma;
        BranchValues {
            pdf_left: self.pdf_left(0.0) / s,
            pdf_right: self.pdf_right(0.0) / s,
            cdf_left: self.cdf_left(0.0),
            cdf_right: self.cdf_right(0.0),
        }
    }

    /// `ln g(x)`, exact in the far tails where `g` itself underflows.
    pub fn ln_pdf(&self, x: f64) -> f64 {
        let BmlParams {
            alpha,
            beta,
            p,
            sigma,
            ..
        } = self.params;
        let z = self.z(x);
        let (a, b) = if z < 0.0 {
            let ln_e = z - LN_2;
            let ln_s = (-0.5 * z.exp()).ln_1p();
            (
                alpha.ln() + alpha * ln_e,
                beta.ln() + (beta - 1.0) * ln_s + ln_e,
            )
        } else {
            let ln_e = -z - LN_2;
            let ln_f = (-0.5 * (-z).exp()).ln_1p();
            (
                alpha.ln() + (alpha - 1.0) * ln_f + ln_e,
                beta.ln() + beta * ln_e,
            )
        };
        let terms = [(p, a), (1.0 - p, b)];
        let logs: Vec<f64> = terms
            .iter()
            .filter(|(w, _)| *w > 0.0)
            .map(|(w, l)| w.ln() + l)
            .collect();
        let m = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if m == f64::NEG_INFINITY || m.is_nan() {
            return m;
        }
        m + logs.iter().map(|l| (l - m).exp()).sum::<f64>().ln() - sigma.ln()
    }

    /// Survival function `1 - G(x)`.
    pub fn survival(&self, x: f64) -> f64 {
        self.sf(x)
    }

    /// Limits of the hazard rate as `x -> -inf` and `x -> +inf`.
    ///
    /// On the left the survival function tends to 1 while the density tends
    /// to 0, so the hazard vanishes. On the right the two tail terms
    /// decay like `e^-z` and `e^-βz`; whichever is slower sets the limit.
    pub fn hazard_limits(&self) -> (f64, f64) {
        let BmlParams { beta, p, sigma, .. } = self.params;
        let right = if p == 1.0 {
            1.0
        } else if p == 0.0 {
            beta
        } else {
            beta.min(1.0)
        };
        (0.0, right / sigma)
    }

    /// `lim h(x)` as `x` decreases to `mu`, in closed form.
    pub fn hazard_at_mu_plus(&self) -> f64 {
        let BmlParams {
            alpha,
            beta,
            p,
            sigma,
            ..
        } = self.params;
        let half_a = 0.5_f64.powf(alpha);
        let half_b = 0.5_f64.powf(beta);
        let num = p * alpha * half_a + (1.0 - p) * beta * half_b;
        let den = 1.0 - p * half_a - (1.0 - p) * (1.0 - half_b);
        num / den / sigma
    }

    /// Quantile by bisection, starting from `[mu - 60σ, mu + 60σ]` and
    /// doubling the bracket until it straddles `q`.
    pub fn checked_quantile(&self, q: f64) -> Result<f64> {
        if !(q > 0.0 && q < 1.0) {
            return Err(Error::Domain {
                func: "bml quantile",
                value: q,
                expected: "0 < q < 1",
            });
        }
        // work in z; compare on whichever tail keeps precision
        let below = |z: f64| {
            if q <= 0.5 {
                self.cdf_std(z) < q
            } else {
                self.sf_std(z) > 1.0 - q
            }
        };
        let (mut lo, mut hi) = (-60.0_f64, 60.0_f64);
        while !below(lo) {
            lo *= 2.0;
            if lo < -1e300 {
                return Err(Error::NonConvergence("bml quantile lower bracket".into()));
            }
        }
        while below(hi) {
            hi *= 2.0;
            if hi > 1e300 {
                return Err(Error::NonConvergence("bml quantile upper bracket".into()));
            }
        }
        for _ in 0..2200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if below(mid) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let z = 0.5 * (lo + hi);
        Ok(self.params.mu + self.params.sigma * z)
    }

    fn cdf_std(&self, z: f64) -> f64 {
        if z < 0.0 {
            self.cdf_left(z)
        } else {
            self.cdf_right(z)
        }
    }

    fn sf_std(&self, z: f64) -> f64 {
        if z < 0.0 {
            self.sf_left(z)
        } else {
            self.sf_right(z)
        }
    }

    pub fn mgf_domain(&self) -> MgfDomain {
        MgfDomain::new(self.params.alpha, self.params.beta)
    }

    /// MGF of the standardized law (`mu = 0`, `sigma = 1`) from the
    /// incomplete-beta closed form.
    pub fn mgf_standard(&self, t: f64) -> Result<f64> {
        let BmlParams { alpha, beta, p, .. } = self.params;
        check_mgf_domain(self.mgf_domain(), t)?;
        let m1 = || mgf_power_component(alpha, t);
        let m2 = || mgf_reflected_component(beta, t);
        Ok(if p == 1.0 {
            m1()
        } else if p == 0.0 {
            m2()
        } else {
            p * m1() + (1.0 - p) * m2()
        })
    }

    /// MGF of the law with its location and scale: `e^{tμ} M(σt)`.
    pub fn mgf(&self, t: f64) -> Result<f64> {
        let BmlParams { mu, sigma, .. } = self.params;
        Ok((t * mu).exp() * self.mgf_standard(sigma * t)?)
    }

    /// Truncated series for the density, with `n_terms` terms in each sum.
    ///
    /// The two generator densities are expanded binomially:
    /// `α F^(α-1) = α Σ_j C(α-1, j) (-1)^j Σ_k C(j, k) (-1)^k F^k` and
    /// `β (1-F)^(β-1) = β Σ_i C(β-1, i) (-1)^i F^i`. For integer shapes the
    /// coefficients vanish beyond the shape, so the sums are exact.
    ///
    /// The inner sum over `k` is `(1-F)^j` and is evaluated in that form:
    /// spelled out, its alternating terms reach `C(j, j/2)` and cancel away
    /// every significant digit once `j` passes about 50.
    pub fn series_pdf(&self, x: f64, n_terms: u32) -> Result<SeriesValue> {
        if n_terms == 0 {
            return Err(Error::Precondition("series needs at least one term".into()));
        }
        let BmlParams {
            alpha,
            beta,
            p,
            sigma,
            ..
        } = self.params;
        let z = self.z(x);
        let f = 0.5 * (-z.abs()).exp();
        let big_f = if z < 0.0 { f } else { 1.0 - f };

        // 1 - F without cancellation
        let big_s = if z < 0.0 { 1.0 - f } else { f };

        let mut first = 0.0;
        let mut last_first = 0.0;
        let mut sj = 1.0;
        for j in 0..n_terms {
            let sign_j = if j % 2 == 0 { 1.0 } else { -1.0 };
            let term = p * alpha * sign_j * gen_binom(alpha - 1.0, j) * sj;
            first += term;
            last_first = term;
            sj *= big_s;
        }

        let mut second = 0.0;
        let mut last_second = 0.0;
        let mut fi = 1.0;
        for i in 0..n_terms {
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            let term = (1.0 - p) * beta * sign * gen_binom(beta - 1.0, i) * fi;
            second += term;
            last_second = term;
            fi *= big_f;
        }
        Ok(SeriesValue {
            value: f * (first + second) / sigma,
            truncation_estimate: f * (last_first.abs() + last_second.abs()) / sigma,
        })
    }
}

fn check_mgf_domain(dom: MgfDomain, t: f64) -> Result<()> {
    if !dom.contains(t) {
        return Err(Error::Domain {
            func: "bml mgf",
            value: t,
            expected: "-min(1, alpha) < t < min(1, beta)",
        });
    }
    if t - dom.lo < MGF_EDGE || dom.hi - t < MGF_EDGE {
        return Err(Error::Range(format!(
            "mgf at t = {t} is within {MGF_EDGE:e} of the domain edge ({}, {})",
            dom.lo, dom.hi
        )));
    }
    Ok(())
}

/// `M₁(t)` for the `Beta(α, 1)` component, `-α < t < 1`.
fn mgf_power_component(alpha: f64, t: f64) -> f64 {
    let left = alpha / (2.0_f64.powf(alpha) * (t + alpha));
    let b = ln_beta_unchecked(alpha, 1.0 - t).exp();
    // 1 - I_{1/2}(α, 1-t) = I_{1/2}(1-t, α)
    let tail = inc_beta_split(0.5, 0.5, 1.0 - t, alpha);
    left + alpha * b * 2.0_f64.powf(-t) * tail
}

/// `M₂(t)` for the `Beta(1, β)` component, `-1 < t < β`.
fn mgf_reflected_component(beta: f64, t: f64) -> f64 {
    let right = beta / (2.0_f64.powf(beta) * (beta - t));
    let b = ln_beta_unchecked(beta, 1.0 + t).exp();
    let tail = inc_beta_split(0.5, 0.5, 1.0 + t, beta);
    right + beta * b * 2.0_f64.powf(t) * tail
}

fn check_integer_shape(name: &str, v: u32) -> Result<()> {
    if v == 0 {
        Err(Error::InvalidParameter {
            name: name.to_string(),
            value: 0.0,
            reason: "integer shape must be >= 1",
        })
    } else {
        Ok(())
    }
}

fn binom(n: u32, k: u32) -> f64 {
    gen_binom(f64::from(n), k)
}

/// Standardized MGF for integer shapes `m`, `n` as finite binomial sums.
pub fn mgf_integer(m: u32, n: u32, p: f64, t: f64) -> Result<f64> {
    check_integer_shape("m", m)?;
    check_integer_shape("n", n)?;
    unit_closed("p", p)?;
    check_mgf_domain(MgfDomain::new(f64::from(m), f64::from(n)), t)?;
    let (mf, nf) = (f64::from(m), f64::from(n));
    let mut s1 = 0.0;
    for j in 0..m {
        let jf = f64::from(j);
        s1 += binom(m - 1, j) * (-0.5_f64).powi(j as i32) / (1.0 + jf - t);
    }
    let m1 = mf / (2.0_f64.powi(m as i32) * (mf + t)) + 0.5 * mf * s1;
    let mut s2 = 0.0;
    for j in 0..n {
        let jf = f64::from(j);
        s2 += binom(n - 1, j) * (-0.5_f64).powi(j as i32) / (1.0 + jf + t);
    }
    let m2 = nf / (2.0_f64.powi(n as i32) * (nf - t)) + 0.5 * nf * s2;
    Ok(p * m1 + (1.0 - p) * m2)
}

/// `E[X^k]` of the standardized law for integer shapes `m`, `n`.
pub fn moment_integer(m: u32, n: u32, p: f64, k: u32) -> Result<f64> {
    check_integer_shape("m", m)?;
    check_integer_shape("n", n)?;
    unit_closed("p", p)?;
    if k == 0 {
        return Ok(1.0);
    }
    let (mf, nf) = (f64::from(m), f64::from(n));
    let kf = k as i32;
    let fact: f64 = (1..=k).map(f64::from).product();
    let sign_k = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    let sum = |r: u32| -> f64 {
        (0..r)
            .map(|j| {
                let jf = f64::from(j);
                binom(r - 1, j) * (-0.5_f64).powi(j as i32) / (jf + 1.0).powi(kf + 1)
            })
            .sum()
    };
    let edges = p * sign_k / (2.0_f64.powi(m as i32) * mf.powi(kf))
        + (1.0 - p) / (2.0_f64.powi(n as i32) * nf.powi(kf));
    let bodies = 0.5 * p * mf * sum(m) + 0.5 * (1.0 - p) * nf * sign_k * sum(n);
    Ok(fact * (edges + bodies))
}

/// `n` independent draws.
///
/// Each draw uses two fresh uniforms: one picks the mixture component, the
/// other is pushed through that component's closed-form quantile and then
/// through the Laplace quantile.
pub fn sample(params: BmlParams, n: usize, seed: u64) -> Result<Vec<f64>> {
    let params = params.validate()?;
    require_count(n)?;
    let mut r = rng::stream(seed);
    let BmlParams {
        alpha,
        beta,
        p,
        mu,
        sigma,
    } = params;
    Ok((0..n)
        .map(|_| {
            let pick = rng::open01(&mut r);
            let u = rng::open01(&mut r);
            let z = if pick < p {
                // B = u^(1/α); ln B and 1 - B without cancellation
                let ln_b = u.ln() / alpha;
                if ln_b < -LN_2 {
                    LN_2 + ln_b
                } else {
                    -(LN_2 + (-ln_b.exp_m1()).ln())
                }
            } else {
                // 1 - B = (1 - u)^(1/β)
                let ln_s = (-u).ln_1p() / beta;
                if ln_s > -LN_2 {
                    LN_2 + (-ln_s.exp_m1()).ln()
                } else {
                    -(LN_2 + ln_s)
                }
            };
            mu + sigma * z
        })
        .collect())
}

impl Univariate for Bml {
    fn name(&self) -> String {
        let BmlParams {
            alpha,
            beta,
            p,
            mu,
            sigma,
        } = self.params;
        format!("bml({alpha},{beta},{p},{mu},{sigma})")
    }

    fn support(&self) -> RealInterval {
        RealInterval::real_line()
    }

    fn pdf(&self, x: f64) -> f64 {
        let z = self.z(x);
        let g = if z < 0.0 {
            self.pdf_left(z)
        } else {
            self.pdf_right(z)
        };
        g / self.params.sigma
    }

    fn cdf(&self, x: f64) -> f64 {
        self.cdf_std(self.z(x))
    }

    fn sf(&self, x: f64) -> f64 {
        self.sf_std(self.z(x))
    }

    fn quantile(&self, q: f64) -> f64 {
        if q <= 0.0 {
            return f64::NEG_INFINITY;
        }
        if q >= 1.0 {
            return f64::INFINITY;
        }
        self.checked_quantile(q).unwrap_or(f64::NAN)
    }

    fn breakpoints(&self) -> Vec<f64> {
        vec![self.params.mu]
    }

    fn sample(&self, n: usize, seed: u64) -> Result<Vec<f64>> {
        sample(self.params, n, seed)
    }
}
