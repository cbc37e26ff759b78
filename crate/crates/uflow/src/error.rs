use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or out-of-contract input data.
    #[error("invalid input: {0}")]
    Input(String),
    /// A configured search or memory budget was exceeded; never a wrong answer.
    #[error("limit exceeded: {0}")]
    LimitExceeded(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn limit(msg: impl Into<String>) -> Self {
        Error::LimitExceeded(msg.into())
    }
}
