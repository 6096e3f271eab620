use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("variable index {index} out of range for {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("metric determinant is not a nonzero constant: {0}")]
    NonConstantDeterminant(String),

    #[error("unsupported variance: {0}")]
    Variance(String),

    #[error("dimension {0} is too small (need n >= 4)")]
    DimensionTooSmall(usize),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("{0}")]
    Precondition(String),
}
