use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("singular system: {0}")]
    Singular(String),
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("internal construction error: {0}")]
    Internal(String),
    #[error("wrong shuffle variant: {0}")]
    WrongVariant(String),
    #[error("node {node} is missing intermediate value ({q}, {n})")]
    Incomplete { node: usize, q: usize, n: usize },
    #[error("missing message: {0}")]
    MissingMessage(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
