use thiserror::Error;

/// Errors raised by the computational engines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed input data (zero vector, empty support, inconsistent dimensions, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// The input is well formed but violates a precondition of the requested operation.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// An internal cross-check failed. This indicates a bug or an input outside the theory.
    #[error("internal consistency failure: {0}")]
    Consistency(String),
    /// An intermediate value left the range of the fixed-width fast path.
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
