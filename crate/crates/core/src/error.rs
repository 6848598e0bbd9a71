use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("rank mismatch: {0}")]
    RankMismatch(String),

    /// A subspace that should be invariant under the right algebra action is not.
    #[error("invariance violation: {0}")]
    InvarianceViolation(String),

    /// The inputs do not satisfy the hypotheses of the requested construction.
    #[error("unmet hypothesis: {0}")]
    UnmetHypothesis(String),

    /// A constructive identity failed. This indicates a defect in the
    /// implementation and must never fire on valid input.
    #[error("identity violated: {0}")]
    IdentityViolation(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
