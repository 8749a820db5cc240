use genlap::catalog::{oracle_check, CatalogEntry, Family};
use genlap::framework::{numeric_moment, Univariate};
use genlap::specfun::log_gamma;

#[test]
fn closed_forms_match_composition() {
    for family in Family::ALL {
        for params in family.sample_parameters() {
            let entry = CatalogEntry::new(family, params).unwrap();
            let grid = entry.default_grid(201);
            let dev = oracle_check(&entry, &grid);
            assert!(
                dev.pdf_dev <= 1e-10 && dev.cdf_dev <= 1e-10,
                "{family} {params:?}: {dev:?}"
            );
        }
    }
}

#[test]
fn hazard_times_survival_is_density() {
    for family in Family::ALL {
        for params in family.sample_parameters() {
            let entry = CatalogEntry::new(family, params).unwrap();
            for x in entry.default_grid(201) {
                let h = entry.catalog_hazard(x).unwrap();
                let lhs = h * (1.0 - entry.catalog_cdf(x));
                let g = entry.catalog_pdf(x);
                assert!(
                    (lhs - g).abs() <= 1e-12 * g.max(1.0),
                    "{family} {params:?} x={x}: {lhs} vs {g}"
                );
            }
        }
    }
}

#[test]
fn unit_shapes_reduce_to_the_base() {
    for family in Family::ALL {
        let mut values = family.sample_parameters()[0].to_vec();
        values[0] = 1.0;
        values[1] = 1.0;
        let entry = CatalogEntry::new(family, &values).unwrap();
        let base = entry.composed().base().clone();
        for x in entry.default_grid(51) {
            assert!((entry.pdf(x) - base.pdf(x)).abs() < 1e-13, "{family} x={x}");
            assert!((entry.cdf(x) - base.cdf(x)).abs() < 1e-13, "{family} x={x}");
        }
    }
}

#[test]
fn pdf_is_nonnegative_and_cdf_monotone() {
    for family in Family::ALL {
        for params in family.sample_parameters() {
            let entry = CatalogEntry::new(family, params).unwrap();
            let mut prev = 0.0;
            for x in entry.default_grid(201) {
                assert!(entry.pdf(x) >= 0.0);
                let c = entry.cdf(x);
                assert!(c >= prev, "{family} {params:?} x={x}");
                prev = c;
            }
        }
    }
}

#[test]
fn beta_pareto_mean_closed_form() {
    let (a, b, theta, k) = (2.0, 3.0, 1.0, 4.0);
    let entry = CatalogEntry::new(Family::BetaPareto, &[a, b, theta, k]).unwrap();
    let lg = |x: f64| log_gamma(x).unwrap();
    let want = theta * (lg(a + b) + lg(b - 1.0 / k) - lg(b) - lg(a + b - 1.0 / k)).exp();
    let got = numeric_moment(&entry, 1).unwrap();
    assert!((got - want).abs() < 1e-7, "{got} vs {want}");
    let composed = numeric_moment(entry.composed(), 1).unwrap();
    assert!((composed - want).abs() < 1e-7, "{composed} vs {want}");
}
