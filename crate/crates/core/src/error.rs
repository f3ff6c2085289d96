use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("pole hit: {0}")]
    Pole(String),
    #[error("enumeration budget of {0} patterns exceeded")]
    Budget(u64),
    #[error("cannot parse {0}")]
    Parse(String),
    #[error("exact mode unavailable: {0}")]
    NumericRequired(String),
    #[error("no convergence: {0}")]
    Convergence(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn contract(msg: impl Into<String>) -> Error {
    Error::Contract(msg.into())
}
