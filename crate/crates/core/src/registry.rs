//! Name-based lookup of models and generators.
//!
//! Every model is a `Arc<dyn Univariate>` and every generator a
//! `Arc<dyn Generator>`, each registered under a stable name with its
//! parameter list. A model name of the form `base+generator` composes a
//! registered base with a registered generator.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::basedist::{make_family, FamilyParams};
use crate::bml::{Bml, BmlParams};
use crate::catalog::{CatalogEntry, Family};
use crate::error::{Error, Result};
use crate::framework::{compose, Generator, Univariate};
use crate::generators::{
    beta_gen, bm_gen, kumaraswamy_gen, power_gen, reflected_power_gen, uniform_gen, BetaGenParams,
    BmGenParams, KumGenParams,
};

pub type ParamMap = BTreeMap<String, f64>;

/// A parameter and its default, if it has one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamSpec {
    pub name: &'static str,
    pub default: Option<f64>,
}

const fn req(name: &'static str) -> ParamSpec {
    ParamSpec {
        name,
        default: None,
    }
}

const fn opt(name: &'static str, v: f64) -> ParamSpec {
    ParamSpec {
        name,
        default: Some(v),
    }
}

type Builder<T> = Box<dyn Fn(&[f64]) -> Result<T> + Send + Sync>;

struct Entry<T> {
    params: Vec<ParamSpec>,
    build: Builder<T>,
}

/// Looks up `specs` in `params`, applying defaults.
fn resolve(kind: &str, specs: &[ParamSpec], params: &ParamMap) -> Result<Vec<f64>> {
    specs
        .iter()
        .map(|s| {
            params.get(s.name).copied().or(s.default).ok_or_else(|| {
                Error::Precondition(format!("{kind} requires parameter '{}'", s.name))
            })
        })
        .collect()
}

fn reject_unknown(params: &ParamMap, known: &[ParamSpec], what: &str) -> Result<()> {
    for key in params.keys() {
        if !known.iter().any(|s| s.name == key) {
            return Err(Error::Unknown {
                kind: "parameter",
                name: format!("{key} (for {what})"),
            });
        }
    }
    Ok(())
}

/// Registered models and generators.
pub struct Registry {
    models: BTreeMap<String, Entry<Arc<dyn Univariate>>>,
    generators: BTreeMap<String, Entry<Arc<dyn Generator>>>,
}

impl Default for Registry {
    fn default() -> Self {
        Self::builtin()
    }
}

impl Registry {
    pub fn empty() -> Self {
        Self {
            models: BTreeMap::new(),
            generators: BTreeMap::new(),
        }
    }

    /// Everything the crate ships: BML, the catalog families, the base laws
    /// and the generators.
    pub fn builtin() -> Self {
        let mut r = Self::empty();

        r.register_model(
            "bml",
            vec![
                req("alpha"),
                req("beta"),
                req("p"),
                opt("mu", 0.0),
                opt("sigma", 1.0),
            ],
            |v| {
                let p = BmlParams::with_location_scale(v[0], v[1], v[2], v[3], v[4])?;
                Ok(Arc::new(Bml::new(p)?) as Arc<dyn Univariate>)
            },
        );

        for family in Family::ALL {
            let specs = family
                .param_names()
                .iter()
                .map(
                    |&n| match family.base_defaults().iter().find(|(d, _)| *d == n) {
                        Some(&(_, v)) => opt(n, v),
                        None => req(n),
                    },
                )
                .collect();
            r.register_model(family.id(), specs, move |v| {
                Ok(Arc::new(CatalogEntry::new(family, v)?) as Arc<dyn Univariate>)
            });
        }

        let base =
            |r: &mut Self, name: &str, specs: Vec<ParamSpec>, f: fn(&[f64]) -> FamilyParams| {
                r.register_model(name, specs, move |v| make_family(f(v)));
            };
        base(
            &mut r,
            "laplace",
            vec![opt("mu", 0.0), opt("sigma", 1.0)],
            |v| FamilyParams::Laplace {
                mu: v[0],
                sigma: v[1],
            },
        );
        base(&mut r, "exponential", vec![opt("lambda", 1.0)], |v| {
            FamilyParams::Exponential { lambda: v[0] }
        });
        base(
            &mut r,
            "weibull",
            vec![opt("c", 1.0), opt("lambda", 1.0)],
            |v| FamilyParams::Weibull {
                c: v[0],
                lambda: v[1],
            },
        );
        base(
            &mut r,
            "gumbel",
            vec![opt("mu", 0.0), opt("sigma", 1.0)],
            |v| FamilyParams::Gumbel {
                mu: v[0],
                sigma: v[1],
            },
        );
        base(
            &mut r,
            "pareto",
            vec![opt("theta", 1.0), opt("k", 1.0)],
            |v| FamilyParams::Pareto {
                theta: v[0],
                k: v[1],
            },
        );
        base(&mut r, "rayleigh", vec![opt("sigma", 1.0)], |v| {
            FamilyParams::Rayleigh { sigma: v[0] }
        });
        base(&mut r, "lindley", vec![opt("theta", 1.0)], |v| {
            FamilyParams::Lindley { theta: v[0] }
        });
        base(
            &mut r,
            "log-logistic",
            vec![opt("alpha", 1.0), opt("gamma", 1.0)],
            |v| FamilyParams::LogLogistic {
                alpha: v[0],
                gamma: v[1],
            },
        );
        base(&mut r, "half-cauchy", vec![opt("phi", 1.0)], |v| {
            FamilyParams::HalfCauchy { phi: v[0] }
        });
        base(
            &mut r,
            "normal",
            vec![opt("mu", 0.0), opt("sigma", 1.0)],
            |v| FamilyParams::Normal {
                mu: v[0],
                sigma: v[1],
            },
        );
        base(
            &mut r,
            "cauchy",
            vec![opt("theta", 0.0), opt("lambda", 1.0)],
            |v| FamilyParams::Cauchy {
                theta: v[0],
                lambda: v[1],
            },
        );

        r.register_generator("uniform", vec![], |_| {
            Ok(Arc::new(uniform_gen()) as Arc<dyn Generator>)
        });
        r.register_generator("beta", vec![req("alpha"), req("beta")], |v| {
            Ok(Arc::new(beta_gen(BetaGenParams::new(v[0], v[1])?)?) as Arc<dyn Generator>)
        });
        r.register_generator("kumaraswamy", vec![req("a"), req("b")], |v| {
            Ok(Arc::new(kumaraswamy_gen(KumGenParams::new(v[0], v[1])?)?) as Arc<dyn Generator>)
        });
        r.register_generator("power", vec![req("alpha")], |v| {
            Ok(Arc::new(power_gen(v[0])?) as Arc<dyn Generator>)
        });
        r.register_generator("reflected-power", vec![req("beta")], |v| {
            Ok(Arc::new(reflected_power_gen(v[0])?) as Arc<dyn Generator>)
        });
        r.register_generator("bm", vec![req("alpha"), req("beta"), req("p")], |v| {
            Ok(Arc::new(bm_gen(BmGenParams::new(v[0], v[1], v[2])?)?) as Arc<dyn Generator>)
        });
        r
    }

    pub fn register_model<F>(&mut self, name: &str, params: Vec<ParamSpec>, build: F)
    where
        F: Fn(&[f64]) -> Result<Arc<dyn Univariate>> + Send + Sync + 'static,
    {
        self.models.insert(
            name.to_string(),
            Entry {
                params,
                build: Box::new(build),
            },
        );
    }

    pub fn register_generator<F>(&mut self, name: &str, params: Vec<ParamSpec>, build: F)
    where
        F: Fn(&[f64]) -> Result<Arc<dyn Generator>> + Send + Sync + 'static,
    {
        self.generators.insert(
            name.to_string(),
            Entry {
                params,
                build: Box::new(build),
            },
        );
    }

    pub fn model_names(&self) -> Vec<&str> {
        self.models.keys().map(String::as_str).collect()
    }

    pub fn generator_names(&self) -> Vec<&str> {
        self.generators.keys().map(String::as_str).collect()
    }

    /// Parameters accepted by a model or a `base+generator` pair.
    pub fn model_params(&self, name: &str) -> Result<Vec<ParamSpec>> {
        if let Some((b, g)) = name.split_once('+') {
            let mut out = self.model_entry(b)?.params.clone();
            for s in &self.generator_entry(g)?.params {
                if !out.iter().any(|o| o.name == s.name) {
                    out.push(*s);
                }
            }
            return Ok(out);
        }
        Ok(self.model_entry(name)?.params.clone())
    }

    fn model_entry(&self, name: &str) -> Result<&Entry<Arc<dyn Univariate>>> {
        self.models.get(name).ok_or_else(|| Error::Unknown {
            kind: "distribution",
            name: name.to_string(),
        })
    }

    fn generator_entry(&self, name: &str) -> Result<&Entry<Arc<dyn Generator>>> {
        self.generators.get(name).ok_or_else(|| Error::Unknown {
            kind: "generator",
            name: name.to_string(),
        })
    }

    /// Builds a generator by name.
    pub fn generator(&self, name: &str, params: &ParamMap) -> Result<Arc<dyn Generator>> {
        let e = self.generator_entry(name)?;
        reject_unknown(params, &e.params, name)?;
        (e.build)(&resolve(name, &e.params, params)?)
    }

    /// Builds a model by name. `base+generator` composes the two; their
    /// parameters share one namespace.
    pub fn model(&self, name: &str, params: &ParamMap) -> Result<Arc<dyn Univariate>> {
        if let Some((b, g)) = name.split_once('+') {
            reject_unknown(params, &self.model_params(name)?, name)?;
            let be = self.model_entry(b)?;
            let ge = self.generator_entry(g)?;
            let base = (be.build)(&resolve(b, &be.params, params)?)?;
            let gen = (ge.build)(&resolve(g, &ge.params, params)?)?;
            return Ok(Arc::new(compose(base, gen)));
        }
        let e = self.model_entry(name)?;
        reject_unknown(params, &e.params, name)?;
        (e.build)(&resolve(name, &e.params, params)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn map(kv: &[(&str, f64)]) -> ParamMap {
        kv.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    #[test]
    fn builds_bml_by_name() {
        let r = Registry::builtin();
        let d = r
            .model("bml", &map(&[("alpha", 2.0), ("beta", 3.0), ("p", 0.5)]))
            .unwrap();
        assert!((d.pdf(0.0) - 0.4375).abs() < 1e-15);
    }

    #[test]
    fn every_catalog_id_is_registered() {
        let r = Registry::builtin();
        for f in Family::ALL {
            assert!(r.model_names().contains(&f.id()));
        }
    }

    #[test]
    fn composes_base_and_generator() {
        let r = Registry::builtin();
        let d = r
            .model(
                "laplace+bm",
                &map(&[("alpha", 2.0), ("beta", 3.0), ("p", 0.5)]),
            )
            .unwrap();
        assert!((d.cdf(0.0) - 0.5625).abs() < 1e-15);
    }

    #[test]
    fn reports_unknown_names_and_missing_params() {
        let r = Registry::builtin();
        assert!(matches!(
            r.model("nope", &ParamMap::new()),
            Err(Error::Unknown { .. })
        ));
        assert!(matches!(
            r.model("bml", &map(&[("alpha", 1.0)])),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            r.model("exponential", &map(&[("rate", 1.0)])),
            Err(Error::Unknown { .. })
        ));
        assert!(r
            .generator("beta", &map(&[("alpha", -1.0), ("beta", 1.0)]))
            .is_err());
    }
}
