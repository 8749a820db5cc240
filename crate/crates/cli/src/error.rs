use std::fmt;

/// Failure of a command, carrying the process exit code it maps to.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags, unknown names, invalid parameter values.
    Usage(String),
    /// Unreadable, empty or malformed input data.
    Data(String),
    /// A computation left its domain or did not converge.
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Data(m) => write!(f, "data error: {m}"),
            CliError::Numerical(m) => write!(f, "numerical error: {m}"),
        }
    }
}

impl From<genlap::Error> for CliError {
    fn from(e: genlap::Error) -> Self {
        use genlap::Error as E;
        let msg = e.to_string();
        match e {
            E::Domain { .. } | E::Range(_) | E::NonConvergence(_) => CliError::Numerical(msg),
            E::DegenerateFit(_) => CliError::Data(msg),
            E::InvalidParameter { .. } | E::Precondition(_) | E::Unknown { .. } => {
                CliError::Usage(msg)
            }
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Data(e.to_string())
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
