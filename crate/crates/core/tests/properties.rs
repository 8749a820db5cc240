use std::sync::Arc;

use proptest::prelude::*;

use genlap::basedist::{
    laplace, Cauchy, Exponential, Gumbel, HalfCauchy, LaplaceParams, Lindley, LogLogistic, Normal,
    Pareto, Rayleigh, Weibull,
};
use genlap::framework::Univariate;
use genlap::quadrature::{integrate, QuadOptions};
use genlap::specfun::{beta_fn, inv_reg_inc_beta, reg_inc_beta};

fn law(kind: u8, a: f64, b: f64) -> Arc<dyn Univariate> {
    match kind % 11 {
        0 => Arc::new(laplace(LaplaceParams::new(a - 2.0, b).unwrap()).unwrap()),
        1 => Arc::new(Exponential::new(a).unwrap()),
        2 => Arc::new(Weibull::new(a, b).unwrap()),
        3 => Arc::new(Gumbel::new(a - 2.0, b).unwrap()),
        4 => Arc::new(Pareto::new(b, a + 0.5).unwrap()),
        5 => Arc::new(Rayleigh::new(a).unwrap()),
        6 => Arc::new(Lindley::new(a).unwrap()),
        7 => Arc::new(LogLogistic::new(b, a + 0.5).unwrap()),
        8 => Arc::new(HalfCauchy::new(a).unwrap()),
        9 => Arc::new(Normal::new(a - 2.0, b).unwrap()),
        _ => Arc::new(Cauchy::new(a - 2.0, b).unwrap()),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn cdf_inverts_quantile(kind in 0u8..11, a in 0.3f64..4.0, b in 0.3f64..4.0, q in 0.001f64..0.999) {
        let d = law(kind, a, b);
        let y = d.quantile(q);
        prop_assert!((d.cdf(y) - q).abs() <= 1e-10, "{} q={} y={}", d.name(), q, y);
    }

    #[test]
    fn density_is_cdf_slope(kind in 0u8..11, a in 0.3f64..4.0, b in 0.3f64..4.0, q in 0.01f64..0.99) {
        let d = law(kind, a, b);
        let y = d.quantile(q);
        let h = 1e-6 * y.abs().max(1.0);
        let s = d.support();
        prop_assume!(y - h > s.lo && y + h < s.hi);
        prop_assume!(d.breakpoints().iter().all(|b| (b - y).abs() > 2.0 * h));
        let slope = (d.cdf(y + h) - d.cdf(y - h)) / (2.0 * h);
        prop_assert!((slope - d.pdf(y)).abs() <= 1e-6 * d.pdf(y).max(1.0),
            "{} y={} slope={} pdf={}", d.name(), y, slope, d.pdf(y));
    }

    #[test]
    fn inc_beta_is_monotone(a in 0.1f64..20.0, b in 0.1f64..20.0, x in 0.0f64..1.0, dx in 0.0f64..0.5) {
        let y = (x + dx).min(1.0);
        prop_assert!(reg_inc_beta(x, a, b).unwrap() <= reg_inc_beta(y, a, b).unwrap() + 1e-15);
    }

    #[test]
    fn inc_beta_reflects(a in 0.1f64..20.0, b in 0.1f64..20.0, x in 0.0f64..1.0) {
        let lhs = reg_inc_beta(x, a, b).unwrap();
        let rhs = 1.0 - reg_inc_beta(1.0 - x, b, a).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-13);
    }

    #[test]
    fn beta_fn_is_symmetric(a in 0.05f64..50.0, b in 0.05f64..50.0) {
        let u = beta_fn(a, b).unwrap();
        let v = beta_fn(b, a).unwrap();
        prop_assert!((u - v).abs() <= 1e-15 * u.abs());
    }

    #[test]
    fn inv_inc_beta_round_trips(a in 0.2f64..15.0, b in 0.2f64..15.0, q in 0.0001f64..0.9999) {
        let x = inv_reg_inc_beta(q, a, b).unwrap();
        prop_assert!((reg_inc_beta(x, a, b).unwrap() - q).abs() <= 1e-10, "x = {}", x);
    }
}

#[test]
fn base_laws_integrate_to_one() {
    for kind in 0..11u8 {
        for (a, b) in [(0.7, 1.3), (2.5, 0.6), (1.0, 1.0)] {
            let d = law(kind, a, b);
            let s = d.support();
            let mut br = d.breakpoints();
            br.push(d.quantile(0.5));
            let total = integrate(|x| d.pdf(x), s.lo, s.hi, &br, QuadOptions::default())
                .unwrap()
                .value;
            assert!((total - 1.0).abs() <= 1e-8, "{}: {total}", d.name());
        }
    }
}
