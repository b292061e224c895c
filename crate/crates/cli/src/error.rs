use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("unknown identity id {0:?}")]
    UnknownIdentity(String),
    #[error("malformed parameter: {0}")]
    MalformedParam(String),
    #[error("grid of {points} points exceeds the cap of {cap}")]
    GridTooLarge { points: usize, cap: usize },
    #[error("invalid precision context: {0}")]
    Context(String),
    #[error("cannot write report: {0}")]
    Io(#[from] std::io::Error),
    #[error("report encoding failed: {0}")]
    Encode(String),
}

pub type HarnessResult<T> = std::result::Result<T, HarnessError>;
