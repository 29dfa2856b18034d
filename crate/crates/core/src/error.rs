use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("operands live in different lattice spaces")]
    SpaceMismatch,

    #[error("invalid space: {0}")]
    InvalidSpace(String),

    #[error("invalid operator: {0}")]
    InvalidOperator(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid filtration: {0}")]
    InvalidFiltration(String),

    #[error("invalid sequence: {0}")]
    InvalidSequence(String),

    #[error("sequence horizon {sequence} does not match filtration horizon {filtration}")]
    HorizonMismatch { sequence: usize, filtration: usize },

    #[error("filtration is not contractive: operator E_{index} has norm {norm}")]
    NotContractive { index: usize, norm: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
