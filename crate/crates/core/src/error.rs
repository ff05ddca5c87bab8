use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("invalid tour: {0}")]
    InvalidTour(String),
    #[error("instance too small: need n >= {need}, got {got}")]
    TooSmall { need: usize, got: usize },
    #[error("size mismatch: expected {expected}, got {got}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("invalid signature: {0}")]
    InvalidSignature(String),
    #[error("invalid move: {0}")]
    InvalidMove(String),
    #[error("weight overflow: {0}")]
    Overflow(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
