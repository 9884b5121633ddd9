use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("arity {got} exceeds the cap of {cap}")]
    ArityCap { got: usize, cap: usize },
    #[error("arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("arity must be at least 1")]
    EmptyArity,
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("not an element of F_n: {0}")]
    NotInFn(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("not a type function: {0}")]
    NotAType(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("dimension error: {0}")]
    Dimension(String),
    #[error("degenerate affine space: {0}")]
    Degenerate(String),
}

pub type Result<T> = std::result::Result<T, Error>;
