use thiserror::Error;

/// Errors produced anywhere in the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("not strongly regular: {0}")]
    NotSrg(String),

    #[error("invalid switching set: {0}")]
    InvalidSet(String),

    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("size guard exceeded: {0}")]
    Size(String),

    #[error("replay failed at step {step}: {message}")]
    Replay { step: usize, message: String },

    #[error("internal consistency error: {0}")]
    Internal(String),

    #[error("{0}")]
    Io(String),

    #[error("usage: {0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(offset: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            offset,
            message: message.into(),
        }
    }
}
