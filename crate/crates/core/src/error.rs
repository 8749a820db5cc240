use thiserror::Error;

/// Errors raised by distribution construction, evaluation and fitting.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A special function was called outside its domain.
    #[error("{func}: argument {value} outside domain ({expected})")]
    Domain {
        func: &'static str,
        value: f64,
        expected: &'static str,
    },

    /// A distribution parameter failed validation.
    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: String,
        value: f64,
        reason: &'static str,
    },

    /// The requested value is infinite or otherwise not representable.
    #[error("range error: {0}")]
    Range(String),

    /// An iterative routine failed to reach its tolerance.
    #[error("no convergence: {0}")]
    NonConvergence(String),

    /// Caller broke a documented precondition (empty input, n = 0, ...).
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Every candidate likelihood was zero, so no weights can be formed.
    #[error("degenerate fit: {0}")]
    DegenerateFit(String),

    /// A registry lookup failed.
    #[error("unknown {kind} '{name}'")]
    Unknown { kind: &'static str, name: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &str, value: f64, reason: &'static str) -> Error {
    Error::InvalidParameter {
        name: name.to_string(),
        value,
        reason,
    }
}

/// Checks `value > 0` and finite.
pub(crate) fn positive(name: &str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(invalid(name, value, "must be finite and > 0"))
    }
}

pub(crate) fn finite(name: &str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(invalid(name, value, "must be finite"))
    }
}

pub(crate) fn unit_closed(name: &str, value: f64) -> Result<f64> {
    if (0.0..=1.0).contains(&value) {
        Ok(value)
    } else {
        Err(invalid(name, value, "must lie in [0, 1]"))
    }
}
