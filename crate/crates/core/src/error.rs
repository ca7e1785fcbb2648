use thiserror::Error;

/// Errors raised by the numerical routines and the sweep harness.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("argument {arg} is outside the accuracy domain of {function}: {reason}")]
    Domain {
        function: &'static str,
        arg: String,
        reason: &'static str,
    },

    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("quadrature did not converge: {0}")]
    Quadrature(String),

    #[error("time grid too coarse: {0}")]
    GridResolution(String),

    #[error("oracle did not converge: successive refinements differ by {relative_change:.3e} (limit {limit:.1e})")]
    NonConvergence { relative_change: f64, limit: f64 },

    #[error("{context}: {source}")]
    Context {
        context: String,
        #[source]
        source: Box<Error>,
    },

    #[error("sweep table is missing rows for state `{0}`")]
    MissingKind(&'static str),

    #[error("invalid sweep config: {0}")]
    InvalidSpec(String),

    #[error("i/o failure: {0}")]
    Io(String),
}

impl Error {
    pub fn with_context(self, context: impl Into<String>) -> Self {
        Error::Context {
            context: context.into(),
            source: Box::new(self),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn positive_finite(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason: "must be finite and strictly positive",
        })
    }
}
