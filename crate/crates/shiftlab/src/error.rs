use thiserror::Error;

#[derive(Debug, Error)]
pub enum ShiftError {
    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("matrix is reducible: {0}")]
    Reducible(String),

    #[error("no natural measure exists: {0}")]
    NoNaturalMeasure(String),

    #[error("iteration did not converge: {0}")]
    NonConvergence(String),

    #[error("work limit exceeded ({0} steps); raise SHIFTLAB_MAX_WORK to override")]
    WorkLimit(u64),

    #[error("query refused: {0}")]
    Refused(String),

    #[error("cross-check mismatch: {0}")]
    Mismatch(String),
}

pub type Result<T> = std::result::Result<T, ShiftError>;
