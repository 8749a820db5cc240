//! Generator laws on (0, 1).
//!
//! Every generator evaluates its CDF and survival function from both `t` and
//! `s = 1 - t`, picking whichever side keeps full precision.

use serde::{Deserialize, Serialize};

use crate::error::{positive, unit_closed, Result};
use crate::framework::{bisect_unit, Generator};
use crate::specfun::{
    inc_beta_complement_split, inc_beta_split, inv_reg_inc_beta, ln_beta_unchecked,
};

/// `1 - t^a` given `t` and `s = 1 - t`.
fn one_minus_pow(t: f64, s: f64, a: f64) -> f64 {
    if t <= 0.5 {
        1.0 - t.powf(a)
    } else {
        -(a * (-s).ln_1p()).exp_m1()
    }
}

/// `ln(1 - t^a)`.
fn ln_one_minus_pow(t: f64, s: f64, a: f64) -> f64 {
    if t <= 0.5 {
        (-t.powf(a)).ln_1p()
    } else {
        one_minus_pow(t, s, a).ln()
    }
}

/// `ln s` where `s = 1 - t`.
fn ln_comp(t: f64, s: f64) -> f64 {
    if t < 0.5 {
        (-t).ln_1p()
    } else {
        s.ln()
    }
}

/// `1 - (1 - u)^(1/b)`.
fn reflected_root(u: f64, b: f64) -> f64 {
    -((-u).ln_1p() / b).exp_m1()
}

/// The uniform generator: `H(t) = t`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Uniform;

pub fn uniform_gen() -> Uniform {
    Uniform
}

impl Generator for Uniform {
    fn name(&self) -> String {
        "uniform".into()
    }
    fn pdf_split(&self, t: f64, _s: f64) -> f64 {
        if (0.0..=1.0).contains(&t) {
            1.0
        } else {
            0.0
        }
    }
    fn cdf_split(&self, t: f64, _s: f64) -> f64 {
        t.clamp(0.0, 1.0)
    }
    fn sf_split(&self, _t: f64, s: f64) -> f64 {
        s.clamp(0.0, 1.0)
    }
    fn quantile(&self, u: f64) -> f64 {
        u.clamp(0.0, 1.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BetaGenParams {
    pub alpha: f64,
    pub beta: f64,
}

impl BetaGenParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        Ok(Self {
            alpha: positive("alpha", alpha)?,
            beta: positive("beta", beta)?,
        })
    }
}

/// The beta generator, `H(t) = I_t(α, β)`.
#[derive(Debug, Clone, Copy)]
pub struct BetaGen {
    a: f64,
    b: f64,
    ln_b: f64,
}

pub fn beta_gen(params: BetaGenParams) -> Result<BetaGen> {
    let p = BetaGenParams::new(params.alpha, params.beta)?;
    Ok(BetaGen {
        a: p.alpha,
        b: p.beta,
        ln_b: ln_beta_unchecked(p.alpha, p.beta),
    })
}

impl BetaGen {
    pub fn params(&self) -> BetaGenParams {
        BetaGenParams {
            alpha: self.a,
            beta: self.b,
        }
    }
}

impl Generator for BetaGen {
    fn name(&self) -> String {
        format!("beta({},{})", self.a, self.b)
    }

    fn pdf_split(&self, t: f64, s: f64) -> f64 {
        if !(0.0..=1.0).contains(&t) {
            return 0.0;
        }
        if t > 0.0 && s > 0.0 {
            ((self.a - 1.0) * t.ln() + (self.b - 1.0) * ln_comp(t, s) - self.ln_b).exp()
        } else {
            t.powf(self.a - 1.0) * s.powf(self.b - 1.0) * (-self.ln_b).exp()
        }
    }

    fn cdf_split(&self, t: f64, s: f64) -> f64 {
        if self.b == 1.0 {
            return t.powf(self.a);
        }
        if self.a == 1.0 {
            return 1.0 - s.powf(self.b);
        }
        inc_beta_split(t, s, self.a, self.b)
    }

    fn sf_split(&self, t: f64, s: f64) -> f64 {
        if self.b == 1.0 {
            return one_minus_pow(t, s, self.a);
        }
        if self.a == 1.0 {
            return s.powf(self.b);
        }
        inc_beta_complement_split(t, s, self.a, self.b)
    }

    fn quantile(&self, u: f64) -> f64 {
        if u <= 0.0 {
            return 0.0;
        }
        if u >= 1.0 {
            return 1.0;
        }
        if self.b == 1.0 {
            return u.powf(1.0 / self.a);
        }
        if self.a == 1.0 {
            return reflected_root(u, self.b);
        }
        inv_reg_inc_beta(u, self.a, self.b).unwrap_or_else(|_| bisect_unit(|t| self.cdf(t), u))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KumGenParams {
    pub a: f64,
    pub b: f64,
}

impl KumGenParams {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        Ok(Self {
            a: positive("a", a)?,
            b: positive("b", b)?,
        })
    }
}

/// The Kumaraswamy generator, `H(t) = 1 - (1 - t^a)^b`.
#[derive(Debug, Clone, Copy)]
pub struct Kumaraswamy {
    a: f64,
    b: f64,
}

pub fn kumaraswamy_gen(params: KumGenParams) -> Result<Kumaraswamy> {
    let p = KumGenParams::new(params.a, params.b)?;
    Ok(Kumaraswamy { a: p.a, b: p.b })
}

impl Generator for Kumaraswamy {
    fn name(&self) -> String {
        format!("kumaraswamy({},{})", self.a, self.b)
    }

    fn pdf_split(&self, t: f64, s: f64) -> f64 {
        if !(0.0..=1.0).contains(&t) {
            return 0.0;
        }
        let w = one_minus_pow(t, s, self.a);
        self.a * self.b * t.powf(self.a - 1.0) * w.powf(self.b - 1.0)
    }

    fn cdf_split(&self, t: f64, s: f64) -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        -(self.b * ln_one_minus_pow(t, s, self.a)).exp_m1()
    }

    fn sf_split(&self, t: f64, s: f64) -> f64 {
        if t <= 0.0 {
            return 1.0;
        }
        (self.b * ln_one_minus_pow(t, s, self.a)).exp()
    }

    fn quantile(&self, u: f64) -> f64 {
        if u <= 0.0 {
            return 0.0;
        }
        if u >= 1.0 {
            return 1.0;
        }
        reflected_root(u, self.b).powf(1.0 / self.a)
    }
}

/// The power-function generator, `H(t) = t^α` (Beta(α, 1)).
#[derive(Debug, Clone, Copy)]
pub struct Power {
    alpha: f64,
}

pub fn power_gen(alpha: f64) -> Result<Power> {
    Ok(Power {
        alpha: positive("alpha", alpha)?,
    })
}

impl Generator for Power {
    fn name(&self) -> String {
        format!("power({})", self.alpha)
    }
    fn pdf_split(&self, t: f64, _s: f64) -> f64 {
        if !(0.0..=1.0).contains(&t) {
            return 0.0;
        }
        self.alpha * t.powf(self.alpha - 1.0)
    }
    fn cdf_split(&self, t: f64, _s: f64) -> f64 {
        t.max(0.0).powf(self.alpha).min(1.0)
    }
    fn sf_split(&self, t: f64, s: f64) -> f64 {
        if t <= 0.0 {
            return 1.0;
        }
        one_minus_pow(t, s, self.alpha).max(0.0)
    }
    fn quantile(&self, u: f64) -> f64 {
        u.clamp(0.0, 1.0).powf(1.0 / self.alpha)
    }
}

/// The reflected power generator, `H(t) = 1 - (1 - t)^β` (Beta(1, β)).
#[derive(Debug, Clone, Copy)]
pub struct ReflectedPower {
    beta: f64,
}

pub fn reflected_power_gen(beta: f64) -> Result<ReflectedPower> {
    Ok(ReflectedPower {
        beta: positive("beta", beta)?,
    })
}

impl Generator for ReflectedPower {
    fn name(&self) -> String {
        format!("reflected-power({})", self.beta)
    }
    fn pdf_split(&self, t: f64, s: f64) -> f64 {
        if !(0.0..=1.0).contains(&t) {
            return 0.0;
        }
        self.beta * s.powf(self.beta - 1.0)
    }
    fn cdf_split(&self, t: f64, s: f64) -> f64 {
        if s <= 0.0 {
            return 1.0;
        }
        -(self.beta * ln_comp(t, s)).exp_m1()
    }
    fn sf_split(&self, t: f64, s: f64) -> f64 {
        if s <= 0.0 {
            return 0.0;
        }
        (self.beta * ln_comp(t, s)).exp()
    }
    fn quantile(&self, u: f64) -> f64 {
        if u <= 0.0 {
            return 0.0;
        }
        if u >= 1.0 {
            return 1.0;
        }
        reflected_root(u, self.beta)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BmGenParams {
    pub alpha: f64,
    pub beta: f64,
    pub p: f64,
}

impl BmGenParams {
    pub fn new(alpha: f64, beta: f64, p: f64) -> Result<Self> {
        Ok(Self {
            alpha: positive("alpha", alpha)?,
            beta: positive("beta", beta)?,
            p: unit_closed("p", p)?,
        })
    }
}

/// The beta-mixture generator `p·Beta(α, 1) + (1 - p)·Beta(1, β)`.
///
/// Unlike the generic mixture this accepts `p` of exactly 0 or 1; a component
/// with zero weight is skipped rather than multiplied by zero, so an infinite
/// endpoint density on the unused side cannot turn into NaN.
#[derive(Debug, Clone, Copy)]
pub struct BetaMixture {
    params: BmGenParams,
    first: Power,
    second: ReflectedPower,
}

pub fn bm_gen(params: BmGenParams) -> Result<BetaMixture> {
    let params = BmGenParams::new(params.alpha, params.beta, params.p)?;
    Ok(BetaMixture {
        params,
        first: Power {
            alpha: params.alpha,
        },
        second: ReflectedPower { beta: params.beta },
    })
}

impl BetaMixture {
    pub fn params(&self) -> BmGenParams {
        self.params
    }

    fn combine(&self, a: impl FnOnce() -> f64, b: impl FnOnce() -> f64) -> f64 {
        let p = self.params.p;
        match (p > 0.0, p < 1.0) {
            (true, true) => p * a() + (1.0 - p) * b(),
            (true, false) => a(),
            (false, _) => b(),
        }
    }
}

impl Generator for BetaMixture {
    fn name(&self) -> String {
        let BmGenParams { alpha, beta, p } = self.params;
        format!("bm({alpha},{beta},{p})")
    }
    fn pdf_split(&self, t: f64, s: f64) -> f64 {
        self.combine(
            || self.first.pdf_split(t, s),
            || self.second.pdf_split(t, s),
        )
    }
    fn cdf_split(&self, t: f64, s: f64) -> f64 {
        self.combine(
            || self.first.cdf_split(t, s),
            || self.second.cdf_split(t, s),
        )
    }
    fn sf_split(&self, t: f64, s: f64) -> f64 {
        self.combine(|| self.first.sf_split(t, s), || self.second.sf_split(t, s))
    }
    fn quantile(&self, u: f64) -> f64 {
        let p = self.params.p;
        if p == 1.0 {
            self.first.quantile(u)
        } else if p == 0.0 {
            self.second.quantile(u)
        } else {
            bisect_unit(|t| self.cdf(t), u)
        }
    }
}
