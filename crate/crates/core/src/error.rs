use thiserror::Error;

/// Errors produced by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("q must satisfy 0 < q < 1, got {0}")]
    InvalidQ(f64),

    #[error("invalid truncation policy: {0}")]
    InvalidPolicy(String),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("series did not converge after {terms} terms (tail estimate {tail:e})")]
    NonConvergence { terms: usize, tail: f64 },

    #[error("truncation dimension too small: {0}")]
    InsufficientTruncation(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// True for errors caused by the inputs rather than by the numerics.
    pub fn is_domain(&self) -> bool {
        !matches!(self, Error::NonConvergence { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
