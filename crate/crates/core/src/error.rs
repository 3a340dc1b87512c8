use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Failure modes shared by every numerical layer of the crate.
///
/// Variants that come from a violated invariant carry the name of the
/// invariant and the measured residual so callers (in particular the CLI)
/// can report them verbatim.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{function}: pole at {at}")]
    Pole { function: &'static str, at: String },

    #[error("{function}: argument outside the domain ({detail})")]
    Domain { function: &'static str, detail: String },

    #[error("{what}: no convergence after {iterations} steps")]
    NonConvergence { what: &'static str, iterations: usize },

    #[error("{what}: imaginary part {imag:e} is not negligible against real part {real:e}")]
    NotReal { what: &'static str, real: f64, imag: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invariant `{invariant}` violated: residual {residual:e}")]
    Invariant {
        invariant: &'static str,
        residual: f64,
    },

    #[error("enumeration cap {cap} exceeded (requested weight {requested})")]
    CapExceeded { cap: usize, requested: usize },

    #[error("spectrum out of range: eigenvalue {0} not in [0, 1]")]
    SpectrumOutOfRange(f64),

    #[error("matrix is not symmetric: max asymmetry {0:e}")]
    NotSymmetric(f64),

    #[error("I + A is singular or indefinite: eigenvalue {0}")]
    Singular(f64),

    #[error("i/o: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl Error {
    pub(crate) fn domain(function: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            function,
            detail: detail.into(),
        }
    }

    pub(crate) fn invalid(detail: impl Into<String>) -> Self {
        Error::InvalidParameter(detail.into())
    }
}
