use thiserror::Error;

/// Errors raised while ingesting points, parsing files or building trees.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("no points to index")]
    EmptyInput,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension must be at least 1")]
    ZeroDimension,

    #[error("coordinate {value} in dimension {dim} is not finite")]
    NonFinite { dim: usize, value: f64 },

    #[error("point count {0} exceeds the supported maximum")]
    TooManyPoints(usize),

    #[error("invalid generator configuration: {0}")]
    InvalidConfig(&'static str),

    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
