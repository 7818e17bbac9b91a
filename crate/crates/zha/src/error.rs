use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("out of range: {0}")]
    Range(String),
    #[error("not an element of the host lattice: {0}")]
    Domain(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("enumeration refused: host has {size} elements, guard is {guard}")]
    Guard { size: usize, guard: usize },
    #[error("contract violated: {0}")]
    Contract(String),
    #[error("missing constant for operator kind `{0}`")]
    Arity(String),
    #[error("invalid input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
