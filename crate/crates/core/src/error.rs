use thiserror::Error;

/// Errors raised by the samplers, special functions and filter.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{func}: argument out of domain ({msg})")]
    Domain { func: &'static str, msg: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A thinning probability exceeded one, meaning the dominating
    /// process does not bound the target intensity.
    #[error("acceptance probability {prob} exceeds 1 at {stage}")]
    BoundViolation { stage: &'static str, prob: f64 },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is not positive semidefinite (eigenvalue {0})")]
    NotPositiveSemidefinite(f64),

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("nonpositive innovation variance {0}")]
    InnovationVariance(f64),

    #[error("observation times are not strictly ascending at index {0}")]
    Unsorted(usize),

    #[error("cannot collapse an empty chain")]
    EmptyChain,
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(func: &'static str, msg: impl Into<String>) -> Error {
    Error::Domain { func, msg: msg.into() }
}
