//! The inverse-CDF generation engine.
//!
//! A base law `F` and a generator `T ~ H` on `(0, 1)` produce the law of
//! `Y = F⁻¹(T)`, whose CDF is `G(y) = H(F(y))` and density `g(y) = h(F(y)) f(y)`.
//! Both sides are trait objects so any base can be paired with any generator.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::quadrature::{integrate, QuadOptions};
use crate::rng;
use crate::specfun::RealInterval;

/// A continuous univariate law: density, CDF, quantile and support.
pub trait Univariate: Send + Sync + fmt::Debug {
    fn name(&self) -> String;

    fn support(&self) -> RealInterval;

    /// Density; zero outside the support.
    fn pdf(&self, x: f64) -> f64;

    /// CDF, clamped to 0 below and 1 above the support.
    fn cdf(&self, x: f64) -> f64;

    /// Survival function `1 - F(x)`. Implementations override this where a
    /// direct form avoids cancellation in the right tail.
    fn sf(&self, x: f64) -> f64 {
        1.0 - self.cdf(x)
    }

    /// Quantile for `q` in `[0, 1]`; the endpoints map to the support bounds.
    fn quantile(&self, q: f64) -> f64;

    /// Hazard rate `f(x) / (1 - F(x))`.
    fn hazard(&self, x: f64) -> Result<f64> {
        let r = self.sf(x);
        if r > 0.0 {
            Ok(self.pdf(x) / r)
        } else {
            Err(Error::Range(format!(
                "{}: survival is zero at x = {x}, hazard undefined",
                self.name()
            )))
        }
    }

    /// Interior points where the density is not smooth.
    fn breakpoints(&self) -> Vec<f64> {
        Vec::new()
    }

    /// `n` independent draws by inverse transform, deterministic in `seed`.
    fn sample(&self, n: usize, seed: u64) -> Result<Vec<f64>> {
        require_count(n)?;
        let mut r = rng::stream(seed);
        Ok((0..n).map(|_| self.quantile(rng::open01(&mut r))).collect())
    }
}

/// A law on `(0, 1)`: the `T` in `Y = F⁻¹(T)`.
///
/// The `_split` methods receive both `t` and `s = 1 - t`. Callers that know
/// `s` more precisely than `1 - t` (a base law's survival function deep in
/// its right tail) pass it through so the generator never cancels.
pub trait Generator: Send + Sync + fmt::Debug {
    fn name(&self) -> String;

    /// Density at `t`; `s` must equal `1 - t`. Singular endpoints give `+inf`.
    fn pdf_split(&self, t: f64, s: f64) -> f64;

    fn cdf_split(&self, t: f64, s: f64) -> f64;

    fn sf_split(&self, t: f64, s: f64) -> f64 {
        1.0 - self.cdf_split(t, s)
    }

    fn pdf(&self, t: f64) -> f64 {
        self.pdf_split(t, 1.0 - t)
    }

    fn cdf(&self, t: f64) -> f64 {
        if t <= 0.0 {
            0.0
        } else if t >= 1.0 {
            1.0
        } else {
            self.cdf_split(t, 1.0 - t)
        }
    }

    /// Quantile on `[0, 1]`. The default bisects the CDF.
    fn quantile(&self, u: f64) -> f64 {
        bisect_unit(|t| self.cdf(t), u)
    }
}

/// Density of `gen` at `t`, or a range error where it diverges.
pub fn checked_pdf(gen: &dyn Generator, t: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::Domain {
            func: "generator pdf",
            value: t,
            expected: "0 <= t <= 1",
        });
    }
    let v = gen.pdf(t);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Range(format!(
            "{} density diverges at t = {t}",
            gen.name()
        )))
    }
}

/// Solves `cdf(t) = u` on `[0, 1]` by bisection to full double precision.
pub(crate) fn bisect_unit<F: Fn(f64) -> f64>(cdf: F, u: f64) -> f64 {
    if u <= 0.0 {
        return 0.0;
    }
    if u >= 1.0 {
        return 1.0;
    }
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    for _ in 0..1100 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if cdf(mid) < u {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

pub(crate) fn require_count(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::Precondition("sample size must be at least 1".into()))
    } else {
        Ok(())
    }
}

/// `F(y)` is clamped into `[GEN_EPS, ...]` before the generator density is
/// evaluated, so that `0^negative` never overflows to infinity.
pub const GEN_EPS: f64 = 1e-300;

/// The law of `F⁻¹(T)` for a base `F` and generator `T`.
#[derive(Clone)]
pub struct GeneratedDistribution {
    base: Arc<dyn Univariate>,
    generator: Arc<dyn Generator>,
}

impl fmt::Debug for GeneratedDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GeneratedDistribution")
            .field("base", &self.base.name())
            .field("generator", &self.generator.name())
            .finish()
    }
}

/// Pairs `base` with `gen`.
pub fn compose(base: Arc<dyn Univariate>, gen: Arc<dyn Generator>) -> GeneratedDistribution {
    GeneratedDistribution {
        base,
        generator: gen,
    }
}

impl GeneratedDistribution {
    pub fn base(&self) -> &Arc<dyn Univariate> {
        &self.base
    }

    pub fn generator(&self) -> &Arc<dyn Generator> {
        &self.generator
    }
}

impl Univariate for GeneratedDistribution {
    fn name(&self) -> String {
        format!("{}-{}", self.generator.name(), self.base.name())
    }

    fn support(&self) -> RealInterval {
        self.base.support()
    }

    fn pdf(&self, y: f64) -> f64 {
        let f = self.base.pdf(y);
        if f == 0.0 {
            return 0.0;
        }
        let t = self.base.cdf(y).max(GEN_EPS);
        let s = self.base.sf(y).max(GEN_EPS);
        self.generator.pdf_split(t, s) * f
    }

    fn cdf(&self, y: f64) -> f64 {
        let t = self.base.cdf(y);
        if t <= 0.0 {
            return 0.0;
        }
        let s = self.base.sf(y);
        if s <= 0.0 {
            return 1.0;
        }
        self.generator.cdf_split(t, s)
    }

    fn sf(&self, y: f64) -> f64 {
        let t = self.base.cdf(y);
        if t <= 0.0 {
            return 1.0;
        }
        let s = self.base.sf(y);
        if s <= 0.0 {
            return 0.0;
        }
        self.generator.sf_split(t, s)
    }

    fn quantile(&self, q: f64) -> f64 {
        self.base.quantile(self.generator.quantile(q))
    }

    fn breakpoints(&self) -> Vec<f64> {
        self.base.breakpoints()
    }

    fn sample(&self, n: usize, seed: u64) -> Result<Vec<f64>> {
        sample_inverse(self, n, seed)
    }
}

/// Mixing weights: each strictly positive, summing to one within 1e-12.
#[derive(Debug, Clone, PartialEq)]
pub struct MixtureWeights(Vec<f64>);

impl MixtureWeights {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::Precondition(
                "mixture needs at least one weight".into(),
            ));
        }
        for (i, &w) in weights.iter().enumerate() {
            if !(w > 0.0 && w.is_finite()) {
                return Err(Error::InvalidParameter {
                    name: format!("weight[{i}]"),
                    value: w,
                    reason: "mixture weights must be > 0",
                });
            }
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter {
                name: "sum(weights)".into(),
                value: total,
                reason: "mixture weights must sum to 1",
            });
        }
        Ok(Self(weights))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }
}

/// A finite mixture of generators, `h = Σ pᵢ hᵢ`.
#[derive(Debug, Clone)]
pub struct GeneratorMixture {
    weights: MixtureWeights,
    parts: Vec<Arc<dyn Generator>>,
}

/// Builds the mixture `Σ pᵢ Hᵢ` from `(pᵢ, Hᵢ)` pairs.
pub fn mix_generators(parts: Vec<(f64, Arc<dyn Generator>)>) -> Result<GeneratorMixture> {
    let (w, g): (Vec<f64>, Vec<Arc<dyn Generator>>) = parts.into_iter().unzip();
    Ok(GeneratorMixture {
        weights: MixtureWeights::new(w)?,
        parts: g,
    })
}

impl GeneratorMixture {
    pub fn weights(&self) -> &MixtureWeights {
        &self.weights
    }

    fn weighted<F: Fn(&dyn Generator) -> f64>(&self, f: F) -> f64 {
        self.weights
            .as_slice()
            .iter()
            .zip(&self.parts)
            .map(|(w, g)| w * f(g.as_ref()))
            .sum()
    }
}

impl Generator for GeneratorMixture {
    fn name(&self) -> String {
        let inner: Vec<String> = self
            .weights
            .as_slice()
            .iter()
            .zip(&self.parts)
            .map(|(w, g)| format!("{w}*{}", g.name()))
            .collect();
        format!("mix({})", inner.join("+"))
    }

    fn pdf_split(&self, t: f64, s: f64) -> f64 {
        self.weighted(|g| g.pdf_split(t, s))
    }

    fn cdf_split(&self, t: f64, s: f64) -> f64 {
        self.weighted(|g| g.cdf_split(t, s))
    }

    fn sf_split(&self, t: f64, s: f64) -> f64 {
        self.weighted(|g| g.sf_split(t, s))
    }
}

/// Draws `n` values of `F⁻¹(T)`, with `T` obtained from the generator
/// quantile applied to uniforms on (0, 1).
pub fn sample_inverse(dist: &GeneratedDistribution, n: usize, seed: u64) -> Result<Vec<f64>> {
    require_count(n)?;
    let mut r = rng::stream(seed);
    Ok((0..n)
        .map(|_| {
            let t = dist.generator.quantile(rng::open01(&mut r));
            dist.base.quantile(t)
        })
        .collect())
}

const BRACKET_START: f64 = 50.0;

/// Inverts `dist.cdf` by bracket expansion from `[-50, 50]` followed by
/// bisection down to adjacent doubles.
pub fn numeric_quantile(dist: &dyn Univariate, q: f64) -> Result<f64> {
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::Domain {
            func: "numeric_quantile",
            value: q,
            expected: "0 < q < 1",
        });
    }
    let sup = dist.support();
    let mut lo = (-BRACKET_START).max(sup.lo);
    let mut hi = BRACKET_START.min(sup.hi);
    if hi <= lo {
        hi = lo + 2.0 * BRACKET_START;
    }
    let mut guard = 0;
    while dist.cdf(lo) > q {
        let width = hi - lo;
        lo = (lo - width).max(sup.lo);
        guard += 1;
        if guard > 2000 {
            return Err(Error::NonConvergence("quantile bracket (lower)".into()));
        }
    }
    guard = 0;
    while dist.cdf(hi) < q {
        let width = hi - lo;
        hi = (hi + width).min(sup.hi);
        guard += 1;
        if guard > 2000 {
            return Err(Error::NonConvergence("quantile bracket (upper)".into()));
        }
    }
    for _ in 0..2200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if dist.cdf(mid) < q {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let (glo, ghi) = (dist.cdf(lo), dist.cdf(hi));
    Ok(if (q - glo).abs() < (ghi - q).abs() {
        lo
    } else {
        hi
    })
}

/// `E[f(X)]` by adaptive quadrature over the support, split at the law's
/// breakpoints.
pub fn expectation<F: Fn(f64) -> f64>(dist: &dyn Univariate, f: F) -> Result<f64> {
    let sup = dist.support();
    let mut breaks = dist.breakpoints();
    breaks.push(dist.quantile(0.5));
    let opts = QuadOptions {
        abs_tol: 1e-12,
        rel_tol: 1e-13,
        max_intervals: 8000,
    };
    integrate(|x| f(x) * dist.pdf(x), sup.lo, sup.hi, &breaks, opts).map(|r| r.value)
}

/// `E[X^k]`, after probing the tails for enough decay that the moment exists.
///
/// The probe looks at `|x|^(k+1) g(x)` at geometrically spaced points beyond
/// the 1e-6 quantiles; it must decrease, which fails for tails no lighter
/// than `|x|^-(k+1)`.
pub fn numeric_moment(dist: &dyn Univariate, k: u32) -> Result<f64> {
    if k == 0 {
        return Err(Error::Precondition("moment order must be >= 1".into()));
    }
    let sup = dist.support();
    let reach = 1.0_f64
        .max(dist.quantile(1e-6).abs())
        .max(dist.quantile(1.0 - 1e-6).abs());
    let probe = |sign: f64| -> bool {
        let r: Vec<f64> = (0..7)
            .map(|j| {
                let x = sign * reach * f64::from(1u32 << j);
                x.abs().powi(k as i32 + 1) * dist.pdf(x)
            })
            .collect();
        r[6] == 0.0 || (r[6] < r[3] && r[3] < r[0])
    };
    let tails_ok = (sup.hi.is_finite() || probe(1.0)) && (sup.lo.is_finite() || probe(-1.0));
    if !tails_ok {
        return Err(Error::NonConvergence(format!(
            "{}: tail probe indicates E[X^{k}] does not exist",
            dist.name()
        )));
    }
    expectation(dist, |x| x.powi(k as i32))
}

/// Kolmogorov–Smirnov distance between the empirical CDF of `sample` and `cdf`.
pub fn ks_statistic<F: Fn(f64) -> f64>(sample: &[f64], cdf: F) -> f64 {
    let mut xs = sample.to_vec();
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    xs.iter()
        .enumerate()
        .map(|(i, &x)| {
            let c = cdf(x);
            let i = i as f64;
            (c - i / n).max((i + 1.0) / n - c)
        })
        .fold(0.0, f64::max)
}
