//! Inverse-CDF generated distribution families.
//!
//! A base law `F` composed with a generator `T` on `(0, 1)` gives the law of
//! `F⁻¹(T)`. The crate ships the usual generators (beta, Kumaraswamy, power
//! and their mixtures), a set of base laws, hand-coded closed forms for a
//! number of beta-G and Kumaraswamy-G families, and the beta-mixture Laplace
//! (BML) model with its estimator and a Monte-Carlo recovery harness.

// `!(x > 0.0)` style guards are used on purpose: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod error;

pub mod basedist;
pub mod bml;
pub mod catalog;
pub mod estimate;
pub mod framework;
pub mod generators;
pub mod quadrature;
pub mod registry;
pub mod rng;
pub mod simstudy;
pub mod specfun;

pub use error::{Error, Result};
pub use framework::{compose, GeneratedDistribution, Generator, Univariate};
