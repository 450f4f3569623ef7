use thiserror::Error;

/// Errors surfaced by every engine in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Input outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// Operation not defined for this ring.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// Input exceeds a configured resource cap.
    #[error("resource limit: {0}")]
    Resource(String),
    /// Coefficients fail a hypothesis of the check; `index` names the first failing level.
    #[error("precondition failed at k={index}: {message}")]
    Precondition { index: usize, message: String },
    /// An iterative solver stopped before meeting its tolerance. `partial` is still usable
    /// where the caller's semantics allow it (e.g. a Rayleigh quotient is a valid lower bound).
    #[error("no convergence after {iterations} iterations (partial value {partial})")]
    NonConvergence { partial: f64, iterations: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
