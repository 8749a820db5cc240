//! Closed-form base laws.
//!
//! Evaluating below or above the support is not an error: the density is 0
//! and the CDF is clamped to 0 or 1, so grid sweeps are total.

use std::f64::consts::{FRAC_2_PI, PI};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{finite, positive, Result};
use crate::framework::Univariate;
use crate::specfun::{lambert_w_m1, normal_cdf, normal_quantile, RealInterval};

const SQRT_2PI: f64 = 2.506_628_274_631_000_7;

/// `Some(endpoint)` when `q` is at or outside `[0, 1]`.
fn quantile_edge(q: f64, sup: RealInterval) -> Option<f64> {
    if q.is_nan() {
        Some(f64::NAN)
    } else if q <= 0.0 {
        Some(sup.lo)
    } else if q >= 1.0 {
        Some(sup.hi)
    } else {
        None
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LaplaceParams {
    pub mu: f64,
    pub sigma: f64,
}

impl LaplaceParams {
    pub fn new(mu: f64, sigma: f64) -> Result<Self> {
        Ok(Self {
            mu: finite("mu", mu)?,
            sigma: positive("sigma", sigma)?,
        })
    }

    pub fn standard() -> Self {
        Self {
            mu: 0.0,
            sigma: 1.0,
        }
    }
}

/// Laplace law with location `mu` and scale `sigma`.
#[derive(Debug, Clone, Copy)]
pub struct Laplace {
    mu: f64,
    sigma: f64,
}

pub fn laplace(params: LaplaceParams) -> Result<Laplace> {
    let p = LaplaceParams::new(params.mu, params.sigma)?;
    Ok(Laplace {
        mu: p.mu,
        sigma: p.sigma,
    })
}

impl Laplace {
    pub fn standard() -> Self {
        Self {
            mu: 0.0,
            sigma: 1.0,
        }
    }

    fn z(&self, x: f64) -> f64 {
        (x - self.mu) / self.sigma
    }
}

impl Univariate for Laplace {
    fn name(&self) -> String {
        format!("laplace({},{})", self.mu, self.sigma)
    }
    fn support(&self) -> RealInterval {
        RealInterval::real_line()
    }
    fn pdf(&self, x: f64) -> f64 {
        0.5 * (-self.z(x).abs()).exp() / self.sigma
    }
    fn cdf(&self, x: f64) -> f64 {
        let z = self.z(x);
        if z < 0.0 {
            0.5 * z.exp()
        } else {
            1.0 - 0.5 * (-z).exp()
        }
    }
    fn sf(&self, x: f64) -> f64 {
        let z = self.z(x);
        if z > 0.0 {
            0.5 * (-z).exp()
        } else {
            1.0 - 0.5 * z.exp()
        }
    }
    fn quantile(&self, q: f64) -> f64 {
        if let Some(e) = quantile_edge(q, self.support()) {
            return e;
        }
        if q < 0.5 {
            self.mu + self.sigma * (2.0 * q).ln()
        } else {
            self.mu - self.sigma * (2.0 * (1.0 - q)).ln()
        }
    }
    fn breakpoints(&self) -> Vec<f64> {
        vec![self.mu]
    }
}

/// Exponential law with rate `lambda`.
#[derive(Debug, Clone, Copy)]
pub struct Exponential {
    lambda: f64,
}

impl Exponential {
    pub fn new(lambda: f64) -> Result<Self> {
        Ok(Self {
            lambda: positive("lambda", lambda)?,
        })
    }
}

impl Univariate for Exponential {
    fn name(&self) -> String {
        format!("exponential({})", self.lambda)
    }
    fn support(&self) -> RealInterval {
        RealInterval::from(0.0)
    }
    fn pdf(&self, x: f64) -> f64 {
        if x < 0.0 {
            0.0
        } else {
            self.lambda * (-self.lambda * x).exp()
        }
    }
    fn cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            0.0
        } else {
            -(-self.lambda * x).exp_m1()
        }
    }
    fn sf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            1.0
        } else {
            (-self.lambda * x).exp()
        }
    }
    fn quantile(&self, q: f64) -> f64 {
        quantile_edge(q, self.support()).unwrap_or_else(|| -(-q).ln_1p() / self.lambda)
    }
}

/// Weibull law, `F(x) = 1 - exp(-(λx)^c)`.
#[derive(Debug, Clone, Copy)]
pub struct Weibull {
    c: f64,
    lambda: f64,
}

impl Weibull {
    pub fn new(c: f64, lambda: f64) -> Result<Self> {
        Ok(Self {
            c: positive("c", c)?,
            lambda: positive("lambda", lambda)?,
        })
    }
}

impl Univariate for Weibull {
    fn name(&self) -> String {
        format!("weibull({},{})", self.c, self.lambda)
    }
    fn support(&self) -> RealInterval {
        RealInterval::from(0.0)
    }
    fn pdf(&self, x: f64) -> f64 {
        if x < 0.0 {
            return 0.0;
        }
        let lx = self.lambda * x;
        self.c * self.lambda * lx.powf(self.c - 1.0) * (-lx.powf(self.c)).exp()
    }
    fn cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            0.0
        } else {
            -(-(self.lambda * x).powf(self.c)).exp_m1()
        }
    }
    fn sf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            1.0
        } else {
            (-(self.lambda * x).powf(self.c)).exp()
        }
    }
    fn quantile(&self, q: f64) -> f64 {
        quantile_edge(q, self.support())
            .unwrap_or_else(|| (-(-q).ln_1p()).powf(1.0 / self.c) / self.lambda)
    }
}

/// Gumbel (maximum) law with location `mu` and scale `sigma`.
#[derive(Debug, Clone, Copy)]
pub struct Gumbel {
    mu: f64,
    sigma: f64,
}

impl Gumbel {
    pub fn new(mu: f64, sigma: f64) -> Result<Self> {
        Ok(Self {
            mu: finite("mu", mu)?,
            sigma: positive("sigma", sigma)?,
        })
    }

    /// `u(x) = exp(-(x - mu)/sigma)`.
    fn u(&self, x: f64) -> f64 {
        (-(x - self.mu) / self.sigma).exp()
    }
}

impl Univariate for Gumbel {
    fn name(&self) -> String {
        format!("gumbel({},{})", self.mu, self.sigma)
    }
    fn support(&self) -> RealInterval {
        RealInterval::real_line()
    }
    fn pdf(&self, x: f64) -> f64 {
        let u = self.u(x);
        if u.is_infinite() {
            return 0.0;
        }
        u * (-u).exp() / self.sigma
    }
    fn cdf(&self, x: f64) -> f64 {
        (-self.u(x)).exp()
    }
    fn sf(&self, x: f64) -> f64 {
        -(-self.u(x)).exp_m1()
    }
    fn quantile(&self, q: f64) -> f64 {
        quantile_edge(q, self.support()).unwrap_or_else(|| self.mu - self.sigma * (-q.ln()).ln())
    }
}

/// Pareto law on `[theta, inf)`, `F(x) = 1 - (theta/x)^k`.
#[derive(Debug, Clone, Copy)]
pub struct Pareto {
    theta: f64,
    k: f64,
}

impl Pareto {
    pub fn new(theta: f64, k: f64) -> Result<Self> {
        Ok(Self {
            theta: positive("theta", theta)?,
            k: positive("k", k)?,
        })
    }
}

impl Univariate for Pareto {
    fn name(&self) -> String {
        format!("pareto({},{})", self.theta, self.k)
    }
    fn support(&self) -> RealInterval {
        RealInterval::from(self.theta)
    }
    fn pdf(&self, x: f64) -> f64 {
        if x < self.theta {
            0.0
        } else {
            self.k / x * (self.theta / x).powf(self.k)
        }
    }
    fn cdf(&self, x: f64) -> f64 {
        if x <= self.theta {
            0.0
        } else {
            -(self.k * (self.theta / x).ln()).exp_m1()
        }
    }
    fn sf(&self, x: f64) -> f64 {
        if x <= self.theta {
            1.0
        } else {
            (self.theta / x).powf(self.k)
        }
    }
    fn quantile(&self, q: f64) -> f64 {
        quantile_edge(q, self.support())
            .unwrap_or_else(|| self.theta * (-(-q).ln_1p() / self.k).exp())
    }
}

/// Rayleigh law, `F(x) = 1 - exp(-x²/(2σ²))`.
#[derive(Debug, Clone, Copy)]
pub struct Rayleigh {
    sigma: f64,
}

impl Rayleigh {
    pub fn new(sigma: f64) -> Result<Self> {
        Ok(Self {
            sigma: positive("sigma", sigma)?,
        })
    }

    fn half_sq(&self, x: f64) -> f64 {
        let r = x / self.sigma;
        0.5 * r * r
    }
}

impl Univariate for Rayleigh {
    fn name(&self) -> String {
        format!("rayleigh({})", self.sigma)
    }
    fn support(&self) -> RealInterval {
        RealInterval::from(0.0)
    }
    fn pdf(&self, x: f64) -> f64 {
        if x < 0.0 {
            0.0
        } else {
            x / (self.sigma * self.sigma) * (-self.half_sq(x)).exp()
        }
    }
    fn cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            0.0
        } else {
            -(-self.half_sq(x)).exp_m1()
        }
    }
    fn sf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            1.0
        } else {
            (-self.half_sq(x)).exp()
        }
    }
    fn quantile(&self, q: f64) -> f64 {
        quantile_edge(q, self.support())
            .unwrap_or_else(|| self.sigma * (-2.0 * (-q).ln_1p()).sqrt())
    }
}

/// Lindley law, `f(x) = θ²/(θ+1) (1 + x) e^{-θx}`.
#[derive(Debug, Clone, Copy)]
pub struct Lindley {
    theta: f64,
}

impl Lindley {
    pub fn new(theta: f64) -> Result<Self> {
        Ok(Self {
            theta: positive("theta", theta)?,
        })
    }
}

impl Univariate for Lindley {
    fn name(&self) -> String {
        format!("lindley({})", self.theta)
    }
    fn support(&self) -> RealInterval {
        RealInterval::from(0.0)
    }
    fn pdf(&self, x: f64) -> f64 {
        if x < 0.0 {
            return 0.0;
        }
        let t = self.theta;
        t * t / (t + 1.0) * (1.0 + x) * (-t * x).exp()
    }
    fn cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        let t = self.theta;
        // 1 - (1 + θx/(θ+1)) e^{-θx}, arranged to avoid cancellation near 0
        -(-t * x).exp_m1() - t * x / (t + 1.0) * (-t * x).exp()
    }
    fn sf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 1.0;
        }
        let t = self.theta;
        (1.0 + t * x / (t + 1.0)) * (-t * x).exp()
    }
    fn quantile(&self, q: f64) -> f64 {
        if let Some(e) = quantile_edge(q, self.support()) {
            return e;
        }
        let t = self.theta;
        let z = (t + 1.0) * (q - 1.0) * (-(t + 1.0)).exp();
        let Ok(w) = lambert_w_m1(z) else {
            return f64::NAN;
        };
        let mut x = (-1.0 - 1.0 / t - w / t).max(0.0);
        // polish against the CDF
        for _ in 0..3 {
            let f = self.pdf(x);
            if f <= 0.0 {
                break;
            }
            let step = (self.cdf(x) - q) / f;
            x = (x - step).max(0.0);
            if step.abs() <= 1e-16 * x.max(1e-300) {
                break;
            }
        }
        x
    }
}

/// Log-logistic law with scale `alpha` and shape `gamma`.
#[derive(Debug, Clone, Copy)]
pub struct LogLogistic {
    alpha: f64,
    gamma: f64,
}

impl LogLogistic {
    pub fn new(alpha: f64, gamma: f64) -> Result<Self> {
        Ok(Self {
            alpha: positive("alpha", alpha)?,
            gamma: positive("gamma", gamma)?,
        })
    }

    fn r(&self, x: f64) -> f64 {
        (x / self.alpha).powf(self.gamma)
    }
}

impl Univariate for LogLogistic {
    fn name(&self) -> String {
        format!("log-logistic({},{})", self.alpha, self.gamma)
    }
    fn support(&self) -> RealInterval {
        RealInterval::from(0.0)
    }
    fn pdf(&self, x: f64) -> f64 {
        if x < 0.0 {
            return 0.0;
        }
        let z = x / self.alpha;
        let r = self.r(x);
        if r.is_infinite() {
            return 0.0;
        }
        self.gamma / self.alpha * z.powf(self.gamma - 1.0) / ((1.0 + r) * (1.0 + r))
    }
    fn cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            0.0
        } else {
            1.0 / (1.0 + (self.alpha / x).powf(self.gamma))
        }
    }
    fn sf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            1.0
        } else {
            1.0 / (1.0 + self.r(x))
        }
    }
    fn quantile(&self, q: f64) -> f64 {
        quantile_edge(q, self.support())
            .unwrap_or_else(|| self.alpha * (q / (1.0 - q)).powf(1.0 / self.gamma))
    }
}

/// Half-Cauchy law with scale `phi`.
#[derive(Debug, Clone, Copy)]
pub struct HalfCauchy {
    phi: f64,
}

impl HalfCauchy {
    pub fn new(phi: f64) -> Result<Self> {
        Ok(Self {
            phi: positive("phi", phi)?,
        })
    }
}

impl Univariate for HalfCauchy {
    fn name(&self) -> String {
        format!("half-cauchy({})", self.phi)
    }
    fn support(&self) -> RealInterval {
        RealInterval::from(0.0)
    }
    fn pdf(&self, x: f64) -> f64 {
        if x < 0.0 {
            return 0.0;
        }
        let z = x / self.phi;
        FRAC_2_PI / (self.phi * (1.0 + z * z))
    }
    fn cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            0.0
        } else {
            FRAC_2_PI * (x / self.phi).atan()
        }
    }
    fn sf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            1.0
        } else {
            FRAC_2_PI * (self.phi / x).atan()
        }
    }
    fn quantile(&self, q: f64) -> f64 {
        quantile_edge(q, self.support()).unwrap_or_else(|| {
            if q <= 0.5 {
                self.phi * (0.5 * PI * q).tan()
            } else {
                self.phi / (0.5 * PI * (1.0 - q)).tan()
            }
        })
    }
}

/// Normal law with mean `mu` and standard deviation `sigma`.
#[derive(Debug, Clone, Copy)]
pub struct Normal {
    mu: f64,
    sigma: f64,
}

impl Normal {
    pub fn new(mu: f64, sigma: f64) -> Result<Self> {
        Ok(Self {
            mu: finite("mu", mu)?,
            sigma: positive("sigma", sigma)?,
        })
    }
}

impl Univariate for Normal {
    fn name(&self) -> String {
        format!("normal({},{})", self.mu, self.sigma)
    }
    fn support(&self) -> RealInterval {
        RealInterval::real_line()
    }
    fn pdf(&self, x: f64) -> f64 {
        let z = (x - self.mu) / self.sigma;
        (-0.5 * z * z).exp() / (self.sigma * SQRT_2PI)
    }
    fn cdf(&self, x: f64) -> f64 {
        normal_cdf((x - self.mu) / self.sigma)
    }
    fn sf(&self, x: f64) -> f64 {
        normal_cdf((self.mu - x) / self.sigma)
    }
    fn quantile(&self, q: f64) -> f64 {
        quantile_edge(q, self.support())
            .unwrap_or_else(|| self.mu + self.sigma * normal_quantile(q))
    }
}

/// Cauchy law with location `theta` and scale `lambda`.
#[derive(Debug, Clone, Copy)]
pub struct Cauchy {
    theta: f64,
    lambda: f64,
}

impl Cauchy {
    pub fn new(theta: f64, lambda: f64) -> Result<Self> {
        Ok(Self {
            theta: finite("theta", theta)?,
            lambda: positive("lambda", lambda)?,
        })
    }
}

impl Univariate for Cauchy {
    fn name(&self) -> String {
        format!("cauchy({},{})", self.theta, self.lambda)
    }
    fn support(&self) -> RealInterval {
        RealInterval::real_line()
    }
    fn pdf(&self, x: f64) -> f64 {
        let z = (x - self.theta) / self.lambda;
        1.0 / (PI * self.lambda * (1.0 + z * z))
    }
    fn cdf(&self, x: f64) -> f64 {
        let z = (x - self.theta) / self.lambda;
        if z < -1.0 {
            (-1.0 / z).atan() / PI
        } else {
            0.5 + z.atan() / PI
        }
    }
    fn sf(&self, x: f64) -> f64 {
        let z = (x - self.theta) / self.lambda;
        if z > 1.0 {
            (1.0 / z).atan() / PI
        } else {
            0.5 - z.atan() / PI
        }
    }
    fn quantile(&self, q: f64) -> f64 {
        quantile_edge(q, self.support()).unwrap_or_else(|| {
            if q < 0.25 {
                self.theta - self.lambda / (PI * q).tan()
            } else if q > 0.75 {
                self.theta + self.lambda / (PI * (1.0 - q)).tan()
            } else {
                self.theta + self.lambda * (PI * (q - 0.5)).tan()
            }
        })
    }
}

/// Parameters for each base family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum FamilyParams {
    Laplace { mu: f64, sigma: f64 },
    Exponential { lambda: f64 },
    Weibull { c: f64, lambda: f64 },
    Gumbel { mu: f64, sigma: f64 },
    Pareto { theta: f64, k: f64 },
    Rayleigh { sigma: f64 },
    Lindley { theta: f64 },
    LogLogistic { alpha: f64, gamma: f64 },
    HalfCauchy { phi: f64 },
    Normal { mu: f64, sigma: f64 },
    Cauchy { theta: f64, lambda: f64 },
}

/// Builds the base law described by `params`.
pub fn make_family(params: FamilyParams) -> Result<Arc<dyn Univariate>> {
    use FamilyParams as F;
    Ok(match params {
        F::Laplace { mu, sigma } => Arc::new(laplace(LaplaceParams { mu, sigma })?),
        F::Exponential { lambda } => Arc::new(Exponential::new(lambda)?),
        F::Weibull { c, lambda } => Arc::new(Weibull::new(c, lambda)?),
        F::Gumbel { mu, sigma } => Arc::new(Gumbel::new(mu, sigma)?),
        F::Pareto { theta, k } => Arc::new(Pareto::new(theta, k)?),
        F::Rayleigh { sigma } => Arc::new(Rayleigh::new(sigma)?),
        F::Lindley { theta } => Arc::new(Lindley::new(theta)?),
        F::LogLogistic { alpha, gamma } => Arc::new(LogLogistic::new(alpha, gamma)?),
        F::HalfCauchy { phi } => Arc::new(HalfCauchy::new(phi)?),
        F::Normal { mu, sigma } => Arc::new(Normal::new(mu, sigma)?),
        F::Cauchy { theta, lambda } => Arc::new(Cauchy::new(theta, lambda)?),
    })
}
