use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An input violated a documented precondition.
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown generator label {0:?}")]
    UnknownLabel(String),
    #[error("unknown case label {0:?}")]
    UnknownCase(String),
    #[error("group closure exceeded the order bound {0}")]
    OrderBound(usize),
    #[error("invalid group construction: {0}")]
    Construction(String),
    /// A quantity that theory forces to be integral or consistent was not.
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
