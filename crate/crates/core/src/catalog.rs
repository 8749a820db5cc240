//! Hand-coded closed forms for a set of beta-G and Kumaraswamy-G families.
//!
//! Each formula below is written out directly in terms of the family's own
//! parameters, without going through [`crate::framework`], so that the two
//! can be checked against each other.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_2_PI, LN_2};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::basedist::{self, FamilyParams};
use crate::error::{finite, positive, Error, Result};
use crate::framework::{compose, GeneratedDistribution, Generator, Univariate};
use crate::generators::{beta_gen, kumaraswamy_gen, BetaGenParams, KumGenParams};
use crate::specfun::{inc_beta_complement_split, inc_beta_split, ln_beta_unchecked, RealInterval};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    BetaExponential,
    BetaWeibull,
    BetaGumbel,
    BetaLaplace,
    BetaPareto,
    BetaRayleigh,
    KumWeibull,
    KumLaplace,
    KumGumbel,
    KumLindley,
    KumHalfCauchy,
}

impl Family {
    pub const ALL: [Family; 11] = [
        Family::BetaExponential,
        Family::BetaWeibull,
        Family::BetaGumbel,
        Family::BetaLaplace,
        Family::BetaPareto,
        Family::BetaRayleigh,
        Family::KumWeibull,
        Family::KumLaplace,
        Family::KumGumbel,
        Family::KumLindley,
        Family::KumHalfCauchy,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Family::BetaExponential => "beta-exponential",
            Family::BetaWeibull => "beta-weibull",
            Family::BetaGumbel => "beta-gumbel",
            Family::BetaLaplace => "beta-laplace",
            Family::BetaPareto => "beta-pareto",
            Family::BetaRayleigh => "beta-rayleigh",
            Family::KumWeibull => "kum-weibull",
            Family::KumLaplace => "kum-laplace",
            Family::KumGumbel => "kum-gumbel",
            Family::KumLindley => "kum-lindley",
            Family::KumHalfCauchy => "kum-half-cauchy",
        }
    }

    pub fn from_id(id: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|f| f.id() == id)
            .ok_or_else(|| Error::Unknown {
                kind: "catalog family",
                name: id.to_string(),
            })
    }

    pub fn is_kumaraswamy(self) -> bool {
        matches!(
            self,
            Family::KumWeibull
                | Family::KumLaplace
                | Family::KumGumbel
                | Family::KumLindley
                | Family::KumHalfCauchy
        )
    }

    /// Parameter names in positional order: two generator shapes, then the
    /// base parameters.
    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            Family::BetaExponential => &["alpha", "beta", "lambda"],
            Family::BetaWeibull => &["alpha", "beta", "c", "lambda"],
            Family::BetaGumbel | Family::BetaLaplace => &["alpha", "beta", "mu", "sigma"],
            Family::BetaPareto => &["alpha", "beta", "theta", "k"],
            Family::BetaRayleigh => &["alpha", "beta", "sigma"],
            Family::KumWeibull => &["a", "b", "c", "lambda"],
            Family::KumLaplace | Family::KumGumbel => &["a", "b", "mu", "sigma"],
            Family::KumLindley => &["a", "b", "theta"],
            Family::KumHalfCauchy => &["a", "b", "phi"],
        }
    }

    /// Three representative parameter sets, in [`Family::param_names`] order,
    /// covering shapes below, at and above 1.
    pub fn sample_parameters(self) -> [&'static [f64]; 3] {
        match self {
            Family::BetaExponential => [&[2.0, 3.0, 1.5], &[0.5, 0.7, 1.0], &[1.3, 4.2, 0.3]],
            Family::BetaWeibull => [
                &[2.0, 3.0, 1.5, 1.0],
                &[0.7, 1.4, 0.8, 2.0],
                &[3.5, 0.6, 2.5, 0.5],
            ],
            Family::BetaGumbel | Family::KumGumbel => [
                &[2.0, 3.0, 0.0, 1.0],
                &[0.6, 0.8, 1.0, 2.0],
                &[4.0, 1.5, -2.0, 0.5],
            ],
            Family::BetaLaplace | Family::KumLaplace => [
                &[2.0, 3.0, 0.0, 1.0],
                &[0.5, 0.7, 0.0, 1.0],
                &[3.0, 1.0, 1.0, 2.0],
            ],
            Family::BetaPareto => [
                &[2.0, 3.0, 1.0, 4.0],
                &[0.7, 1.5, 2.0, 1.0],
                &[5.0, 0.8, 0.5, 3.0],
            ],
            Family::BetaRayleigh => [&[2.0, 3.0, 1.0], &[0.6, 0.9, 2.0], &[4.0, 2.0, 0.5]],
            Family::KumWeibull => [
                &[2.0, 3.0, 1.5, 1.0],
                &[0.7, 0.5, 0.8, 2.0],
                &[5.0, 2.0, 2.5, 0.5],
            ],
            Family::KumLindley => [&[2.0, 3.0, 1.0], &[0.6, 0.8, 0.5], &[4.0, 1.5, 3.0]],
            Family::KumHalfCauchy => [&[2.0, 3.0, 1.0], &[0.6, 0.8, 2.0], &[4.0, 1.5, 0.5]],
        }
    }

    /// Default values for the base parameters (generator shapes have none).
    pub fn base_defaults(self) -> &'static [(&'static str, f64)] {
        match self {
            Family::BetaExponential => &[("lambda", 1.0)],
            Family::BetaWeibull | Family::KumWeibull => &[("c", 1.0), ("lambda", 1.0)],
            Family::BetaGumbel | Family::BetaLaplace | Family::KumLaplace | Family::KumGumbel => {
                &[("mu", 0.0), ("sigma", 1.0)]
            }
            Family::BetaPareto => &[("theta", 1.0), ("k", 1.0)],
            Family::BetaRayleigh => &[("sigma", 1.0)],
            Family::KumLindley => &[("theta", 1.0)],
            Family::KumHalfCauchy => &[("phi", 1.0)],
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// Pieces of the base law needed by the closed forms: `ln f`, `ln F`, `ln(1-F)`.
#[derive(Debug, Clone, Copy)]
struct BaseLogs {
    ln_f: f64,
    ln_cdf: f64,
    ln_sf: f64,
}

/// `c * l`, treating `0 * (-inf)` as 0.
fn scaled(c: f64, l: f64) -> f64 {
    if c == 0.0 {
        0.0
    } else {
        c * l
    }
}

/// A catalog family with fixed parameters.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    family: Family,
    values: Vec<f64>,
    g1: f64,
    g2: f64,
    ln_b: f64,
    composed: GeneratedDistribution,
}

impl CatalogEntry {
    /// Builds an entry from parameters in [`Family::param_names`] order.
    pub fn new(family: Family, values: &[f64]) -> Result<Self> {
        let names = family.param_names();
        if values.len() != names.len() {
            return Err(Error::Precondition(format!(
                "{family} takes {} parameters ({}), got {}",
                names.len(),
                names.join(", "),
                values.len()
            )));
        }
        for (name, &v) in names.iter().zip(values) {
            if *name == "mu" {
                finite(name, v)?;
            } else {
                positive(name, v)?;
            }
        }
        let (g1, g2) = (values[0], values[1]);
        let base = basedist::make_family(base_params(family, &values[2..]))?;
        let gen: Arc<dyn Generator> = if family.is_kumaraswamy() {
            Arc::new(kumaraswamy_gen(KumGenParams { a: g1, b: g2 })?)
        } else {
            Arc::new(beta_gen(BetaGenParams {
                alpha: g1,
                beta: g2,
            })?)
        };
        Ok(Self {
            family,
            values: values.to_vec(),
            g1,
            g2,
            ln_b: ln_beta_unchecked(g1, g2),
            composed: compose(base, gen),
        })
    }

    /// Builds an entry from named parameters, filling base defaults.
    pub fn from_map(family: Family, params: &BTreeMap<String, f64>) -> Result<Self> {
        let mut values = Vec::new();
        for name in family.param_names() {
            let v = params
                .get(*name)
                .copied()
                .or_else(|| {
                    family
                        .base_defaults()
                        .iter()
                        .find(|(n, _)| n == name)
                        .map(|(_, v)| *v)
                })
                .ok_or_else(|| {
                    Error::Precondition(format!("{family} requires parameter '{name}'"))
                })?;
            values.push(v);
        }
        for key in params.keys() {
            if !family.param_names().contains(&key.as_str()) {
                return Err(Error::Unknown {
                    kind: "parameter",
                    name: format!("{key} (for {family})"),
                });
            }
        }
        Self::new(family, &values)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// The same law built by composing its base with its generator.
    pub fn composed(&self) -> &GeneratedDistribution {
        &self.composed
    }

    fn v(&self, i: usize) -> f64 {
        self.values[i]
    }

    fn base_logs(&self, x: f64) -> BaseLogs {
        match self.family {
            Family::BetaExponential => {
                let lam = self.v(2);
                BaseLogs {
                    ln_f: lam.ln() - lam * x,
                    ln_cdf: (-(-lam * x).exp_m1()).ln(),
                    ln_sf: -lam * x,
                }
            }
            Family::BetaWeibull | Family::KumWeibull => {
                let (c, lam) = (self.v(2), self.v(3));
                let w = (lam * x).powf(c);
                BaseLogs {
                    ln_f: c.ln() + c * lam.ln() + (c - 1.0) * x.ln() - w,
                    ln_cdf: (-(-w).exp_m1()).ln(),
                    ln_sf: -w,
                }
            }
            Family::BetaGumbel | Family::KumGumbel => {
                let (mu, sigma) = (self.v(2), self.v(3));
                let z = (x - mu) / sigma;
                let u = (-z).exp();
                BaseLogs {
                    ln_f: -z - u - sigma.ln(),
                    ln_cdf: -u,
                    ln_sf: (-(-u).exp_m1()).ln(),
                }
            }
            Family::BetaLaplace | Family::KumLaplace => {
                let (mu, sigma) = (self.v(2), self.v(3));
                let z = (x - mu) / sigma;
                let ln_half_e = -LN_2 - z.abs();
                let ln_other = (-0.5 * (-z.abs()).exp()).ln_1p();
                let (ln_cdf, ln_sf) = if z < 0.0 {
                    (ln_half_e, ln_other)
                } else {
                    (ln_other, ln_half_e)
                };
                BaseLogs {
                    ln_f: ln_half_e - sigma.ln(),
                    ln_cdf,
                    ln_sf,
                }
            }
            Family::BetaPareto => {
                let (theta, k) = (self.v(2), self.v(3));
                let r = (theta / x).ln();
                BaseLogs {
                    ln_f: k.ln() - x.ln() + k * r,
                    ln_cdf: (-(k * r).exp()).ln_1p(),
                    ln_sf: k * r,
                }
            }
            Family::BetaRayleigh => {
                let sigma = self.v(2);
                let h = 0.5 * (x / sigma) * (x / sigma);
                BaseLogs {
                    ln_f: x.ln() - 2.0 * sigma.ln() - h,
                    ln_cdf: (-(-h).exp_m1()).ln(),
                    ln_sf: -h,
                }
            }
            Family::KumLindley => {
                let th = self.v(2);
                let sf = (th + 1.0 + th * x) / (th + 1.0) * (-th * x).exp();
                let cdf = -(-th * x).exp_m1() - th * x / (th + 1.0) * (-th * x).exp();
                BaseLogs {
                    ln_f: 2.0 * th.ln() - (th + 1.0).ln() + x.ln_1p() - th * x,
                    ln_cdf: cdf.ln(),
                    ln_sf: sf.ln(),
                }
            }
            Family::KumHalfCauchy => {
                let phi = self.v(2);
                BaseLogs {
                    ln_f: (FRAC_2_PI * phi / (x * x + phi * phi)).ln(),
                    ln_cdf: (FRAC_2_PI * (x / phi).atan()).ln(),
                    ln_sf: (FRAC_2_PI * (phi / x).atan()).ln(),
                }
            }
        }
    }

    fn in_support(&self, x: f64) -> bool {
        let s = self.support();
        x > s.lo && x < s.hi
    }

    /// Density from the family's closed form.
    pub fn catalog_pdf(&self, x: f64) -> f64 {
        if !self.in_support(x) {
            return 0.0;
        }
        let b = self.base_logs(x);
        let (g1, g2) = (self.g1, self.g2);
        if self.family.is_kumaraswamy() {
            // a b f F^{a-1} (1 - F^a)^{b-1}
            let ln_w = ln_one_minus_exp(g1 * b.ln_cdf);
            (g1.ln() + g2.ln() + b.ln_f + scaled(g1 - 1.0, b.ln_cdf) + scaled(g2 - 1.0, ln_w)).exp()
        } else {
            // f F^{α-1} (1-F)^{β-1} / B(α, β)
            (b.ln_f + scaled(g1 - 1.0, b.ln_cdf) + scaled(g2 - 1.0, b.ln_sf) - self.ln_b).exp()
        }
    }

    /// CDF from the family's closed form.
    pub fn catalog_cdf(&self, x: f64) -> f64 {
        let s = self.support();
        if x <= s.lo {
            return 0.0;
        }
        if x >= s.hi {
            return 1.0;
        }
        let b = self.base_logs(x);
        if self.family.is_kumaraswamy() {
            -(self.g2 * ln_one_minus_exp(self.g1 * b.ln_cdf)).exp_m1()
        } else {
            inc_beta_split(b.ln_cdf.exp(), b.ln_sf.exp(), self.g1, self.g2)
        }
    }

    /// Survival from the family's closed form.
    pub fn catalog_sf(&self, x: f64) -> f64 {
        let s = self.support();
        if x <= s.lo {
            return 1.0;
        }
        if x >= s.hi {
            return 0.0;
        }
        let b = self.base_logs(x);
        if self.family.is_kumaraswamy() {
            (self.g2 * ln_one_minus_exp(self.g1 * b.ln_cdf)).exp()
        } else {
            inc_beta_complement_split(b.ln_cdf.exp(), b.ln_sf.exp(), self.g1, self.g2)
        }
    }

    /// Hazard rate. Kumaraswamy families use `a b f F^{a-1} / (1 - F^a)`;
    /// beta families divide the density by the survival function.
    pub fn catalog_hazard(&self, x: f64) -> Result<f64> {
        if self.family.is_kumaraswamy() && self.in_support(x) {
            let b = self.base_logs(x);
            let (a, bb) = (self.g1, self.g2);
            let ln_w = ln_one_minus_exp(a * b.ln_cdf);
            if ln_w == f64::NEG_INFINITY {
                return Err(Error::Range(format!(
                    "{}: survival is zero at x = {x}",
                    self.family
                )));
            }
            return Ok((a.ln() + bb.ln() + b.ln_f + scaled(a - 1.0, b.ln_cdf) - ln_w).exp());
        }
        let r = self.catalog_sf(x);
        if r > 0.0 {
            Ok(self.catalog_pdf(x) / r)
        } else {
            Err(Error::Range(format!(
                "{}: survival is zero at x = {x}",
                self.family
            )))
        }
    }

    /// A grid of `n` points spanning the bulk of the law (quantiles 0.001 to 0.999).
    pub fn default_grid(&self, n: usize) -> Vec<f64> {
        let n = n.max(2);
        (0..n)
            .map(|i| {
                let q = 0.001 + 0.998 * i as f64 / (n - 1) as f64;
                self.composed.quantile(q)
            })
            .collect()
    }
}

/// `ln(1 - e^l)` for `l <= 0`.
fn ln_one_minus_exp(l: f64) -> f64 {
    if l > -LN_2 {
        (-l.exp_m1()).ln()
    } else {
        (-l.exp()).ln_1p()
    }
}

fn base_params(family: Family, v: &[f64]) -> FamilyParams {
    match family {
        Family::BetaExponential => FamilyParams::Exponential { lambda: v[0] },
        Family::BetaWeibull | Family::KumWeibull => FamilyParams::Weibull {
            c: v[0],
            lambda: v[1],
        },
        Family::BetaGumbel | Family::KumGumbel => FamilyParams::Gumbel {
            mu: v[0],
            sigma: v[1],
        },
        Family::BetaLaplace | Family::KumLaplace => FamilyParams::Laplace {
            mu: v[0],
            sigma: v[1],
        },
        Family::BetaPareto => FamilyParams::Pareto {
            theta: v[0],
            k: v[1],
        },
        Family::BetaRayleigh => FamilyParams::Rayleigh { sigma: v[0] },
        Family::KumLindley => FamilyParams::Lindley { theta: v[0] },
        Family::KumHalfCauchy => FamilyParams::HalfCauchy { phi: v[0] },
    }
}

impl Univariate for CatalogEntry {
    fn name(&self) -> String {
        let names = self.family.param_names();
        let parts: Vec<String> = names
            .iter()
            .zip(&self.values)
            .map(|(n, v)| format!("{n}={v}"))
            .collect();
        format!("{}({})", self.family, parts.join(","))
    }
    fn support(&self) -> RealInterval {
        self.composed.support()
    }
    fn pdf(&self, x: f64) -> f64 {
        self.catalog_pdf(x)
    }
    fn cdf(&self, x: f64) -> f64 {
        self.catalog_cdf(x)
    }
    fn sf(&self, x: f64) -> f64 {
        self.catalog_sf(x)
    }
    fn quantile(&self, q: f64) -> f64 {
        self.composed.quantile(q)
    }
    fn hazard(&self, x: f64) -> Result<f64> {
        self.catalog_hazard(x)
    }
    fn breakpoints(&self) -> Vec<f64> {
        self.composed.breakpoints()
    }
    fn sample(&self, n: usize, seed: u64) -> Result<Vec<f64>> {
        self.composed.sample(n, seed)
    }
}

/// Largest absolute differences between the closed forms and the composed law.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OracleDeviation {
    pub pdf_dev: f64,
    pub cdf_dev: f64,
}

/// Compares `entry`'s closed forms with framework composition over `grid`.
pub fn oracle_check(entry: &CatalogEntry, grid: &[f64]) -> OracleDeviation {
    let mut out = OracleDeviation {
        pdf_dev: 0.0,
        cdf_dev: 0.0,
    };
    let c = entry.composed();
    for &x in grid {
        let dp = (entry.catalog_pdf(x) - c.pdf(x)).abs();
        let dc = (entry.catalog_cdf(x) - c.cdf(x)).abs();
        // NaN on either side must surface as a failure
        out.pdf_dev = if dp.is_nan() {
            f64::NAN
        } else {
            out.pdf_dev.max(dp)
        };
        out.cdf_dev = if dc.is_nan() {
            f64::NAN
        } else {
            out.cdf_dev.max(dc)
        };
        if out.pdf_dev.is_nan() || out.cdf_dev.is_nan() {
            break;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip() {
        for f in Family::ALL {
            assert_eq!(Family::from_id(f.id()).unwrap(), f);
        }
        assert!(Family::from_id("beta-normal").is_err());
    }

    #[test]
    fn beta_exponential_unit_shapes() {
        let e = CatalogEntry::new(Family::BetaExponential, &[1.0, 1.0, 2.0]).unwrap();
        let want = 2.0 * (-2.0_f64).exp();
        assert!((e.catalog_pdf(1.0) - want).abs() < 1e-15);
    }

    #[test]
    fn kum_laplace_unit_shapes_median() {
        let e = CatalogEntry::new(Family::KumLaplace, &[1.0, 1.0, 0.0, 1.0]).unwrap();
        assert!((e.catalog_cdf(0.0) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn beta_laplace_with_unit_beta_is_kum_laplace() {
        for alpha in [0.4, 1.0, 2.7] {
            let b = CatalogEntry::new(Family::BetaLaplace, &[alpha, 1.0, 0.0, 1.0]).unwrap();
            let k = CatalogEntry::new(Family::KumLaplace, &[alpha, 1.0, 0.0, 1.0]).unwrap();
            for i in 0..201 {
                let x = -10.0 + 0.1 * f64::from(i);
                assert!((b.pdf(x) - k.pdf(x)).abs() <= 1e-12, "pdf x={x}");
                assert!((b.cdf(x) - k.cdf(x)).abs() <= 1e-12, "cdf x={x}");
            }
        }
    }

    #[test]
    fn hazard_identity() {
        let e = CatalogEntry::new(Family::KumGumbel, &[2.0, 0.5, 1.0, 2.0]).unwrap();
        for x in e.default_grid(51) {
            let h = e.catalog_hazard(x).unwrap();
            let lhs = h * (1.0 - e.catalog_cdf(x));
            assert!((lhs - e.catalog_pdf(x)).abs() < 1e-12, "x={x}");
        }
    }

    #[test]
    fn parameter_handling() {
        assert!(CatalogEntry::new(Family::BetaPareto, &[1.0, 1.0, 1.0]).is_err());
        assert!(CatalogEntry::new(Family::KumLindley, &[1.0, -1.0, 1.0]).is_err());
        let mut m = BTreeMap::new();
        m.insert("a".to_string(), 2.0);
        m.insert("b".to_string(), 3.0);
        let e = CatalogEntry::from_map(Family::KumWeibull, &m).unwrap();
        assert_eq!(e.values(), &[2.0, 3.0, 1.0, 1.0]);
        m.insert("zeta".to_string(), 1.0);
        assert!(CatalogEntry::from_map(Family::KumWeibull, &m).is_err());
    }
}
