use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is singular")]
    Singular,
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid group: {0}")]
    Group(String),
    #[error("invalid permutation: {0}")]
    Pi(String),
    #[error("invalid field: {0}")]
    Field(String),
    #[error("invalid input data: {0}")]
    Data(String),
    #[error("constant {0} is not a root of unity")]
    NotRootOfUnity(String),
    #[error("solution set is infinite: {0}")]
    Infinite(String),
}

pub type Result<T> = std::result::Result<T, Error>;
