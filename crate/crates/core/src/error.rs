use thiserror::Error;

/// Errors raised by constructions and checks in this crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension {0} is out of range (supported: {1})")]
    DimensionOutOfRange(usize, &'static str),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("operation needs an even dimension, got d = {0}")]
    OddDimension(usize),

    #[error("matrix has non-constant entries; evaluate it first")]
    NonConstant,

    #[error("missing value for variable {0}")]
    MissingVariable(&'static str),

    #[error("roots {0} and {1} lie in different parity classes")]
    CrossParity(String, String),

    #[error("symplectic metric needs an even dimension, got n = {0}")]
    OddSymplectic(usize),

    #[error("resource guard exceeded: {0}")]
    ResourceGuard(String),

    #[error("matrix is singular")]
    Singular,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
