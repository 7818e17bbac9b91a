use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("contract violated: {0}")]
    Contract(String),
    #[error("naturality fails: {0}")]
    Naturality(String),
    #[error(transparent)]
    Lattice(#[from] zha::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
