use crate::frac::Violation;

/// Crate-wide error type.
///
/// `Infeasible` carries the exact certificate of why an input vector is not a
/// fractional perfect matching; `Invariant` signals a broken internal
/// invariant (an algorithmic bug, never a bad input).
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("infeasible input: {0}")]
    Infeasible(Violation),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("iteration cap exceeded: {0}")]
    IterationCap(String),
    #[error("instance too large for oracle: {0}")]
    SizeLimit(String),
}

impl Error {
    pub fn invalid_argument(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }

    pub fn size_limit(msg: impl Into<String>) -> Self {
        Error::SizeLimit(msg.into())
    }
}
