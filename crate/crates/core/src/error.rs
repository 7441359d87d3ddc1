use thiserror::Error;

/// Errors produced by the toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unsupported algebra: {0}")]
    UnsupportedAlgebra(String),
    #[error("{what} has dimension {dim}, the limit is {max}")]
    DimensionTooLarge {
        what: &'static str,
        dim: usize,
        max: usize,
    },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("degenerate form: {0}")]
    DegenerateForm(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid algebra data: {0}")]
    InvalidAlgebra(String),
    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),
    #[error("point family is empty")]
    EmptyFamily,
    #[error("radius schedule rejected: {0}")]
    InsufficientRadii(String),
    #[error("operation is undefined at the zero covector")]
    ZeroPoint,
    #[error("expected an even number of tangent vectors, got {0}")]
    OddDimension(usize),
    #[error("sample budget {budget} is below the minimum {min}")]
    BudgetTooSmall { budget: usize, min: usize },
    #[error("action matrices do not commute (residual {0:.3e})")]
    NonCommuting(f64),
    #[error("bad partition: {0}")]
    BadPartition(String),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("unknown representation label: {0}")]
    UnknownRepresentation(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("cone kind not supported here: {0}")]
    UnsupportedCone(String),
}

pub type Result<T> = std::result::Result<T, Error>;
