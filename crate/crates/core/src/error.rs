use thiserror::Error;

/// Errors raised by the algebra, spectral, Peirce and orbit kernels.
///
/// Every message names the precondition or check that failed.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum JordanError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("algebra mismatch: {left} vs {right}")]
    AlgebraMismatch { left: String, right: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("invalid signature: {0}")]
    InvalidSignature(String),

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("numerical failure: {0}")]
    NumericalFailure(String),

    #[error("sampling failed: {0}")]
    Sampling(String),
}

impl JordanError {
    /// True for errors caused by numerics rather than by the caller's input.
    pub fn is_numerical(&self) -> bool {
        matches!(self, JordanError::NumericalFailure(_) | JordanError::Sampling(_))
    }
}

pub type Result<T> = std::result::Result<T, JordanError>;
