use thiserror::Error;

/// Errors produced by domain validation and numerical routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("tail sum did not converge within {max_terms} terms")]
    TailNotConverged { max_terms: u64 },

    #[error("no admissible truncation depth below {max_depth}: residual interference stays above the noise level")]
    TruncationNotFound { max_depth: u64 },

    #[error("deployment contains no points")]
    EmptyDeployment,

    #[error("distance {0} km is outside the model's validity range")]
    DistanceOutOfRange(f64),

    #[error("sweep grid rejected: {0}")]
    InvalidGrid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}

/// Shorthand for the recurring `value must be positive / in range` checks.
macro_rules! ensure {
    ($cond:expr, $name:expr, $($msg:tt)*) => {
        if !($cond) {
            return Err(crate::error::Error::param($name, format!($($msg)*)));
        }
    };
}

pub(crate) use ensure;
