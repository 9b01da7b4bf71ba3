use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid instance: {0}")]
    Instance(String),
    #[error("family {0} is not in the index")]
    UnknownFamily(String),
    #[error("cannot decode digraph: {0}")]
    Decode(String),
    #[error("enumeration of {p} nodes exceeds the limit of {limit}")]
    EnumerationLimit { p: usize, limit: usize },
    #[error("cluster must contain at least two nodes")]
    ClusterTooSmall,
    #[error("simplex iteration limit reached after {0} pivots")]
    IterationLimit(usize),
    #[error("invalid LP model: {0}")]
    Model(String),
    #[error("branching needs a fractional point")]
    NotFractional,
    #[error("reduction: {0}")]
    Reduction(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}
