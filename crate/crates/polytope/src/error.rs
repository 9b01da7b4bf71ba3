use thiserror::Error;

pub type Result<T> = std::result::Result<T, PolyError>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PolyError {
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("precondition unmet: {0}")]
    Precondition(String),
    #[error("not projectable: {0}")]
    NotProjectable(String),
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
    #[error(transparent)]
    Core(#[from] bnsl_core::Error),
}
