use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CccError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("validation failed at {location}: {message}")]
    Validation { location: String, message: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("window too small: boundary terms still contribute at window {window} (cap {cap})")]
    WindowTooSmall { window: u32, cap: u32 },

    #[error("point {0} lies on a region boundary")]
    NonGenericPoint(String),

    #[error("grid alignment: {0}")]
    GridAlignment(String),

    #[error("io error: {0}")]
    Io(String),
}

impl CccError {
    pub fn invalid(msg: impl Into<String>) -> Self {
        CccError::InvalidArgument(msg.into())
    }

    pub fn validation(location: impl Into<String>, message: impl Into<String>) -> Self {
        CccError::Validation {
            location: location.into(),
            message: message.into(),
        }
    }

    pub fn precondition(msg: impl Into<String>) -> Self {
        CccError::Precondition(msg.into())
    }
}

impl From<std::io::Error> for CccError {
    fn from(e: std::io::Error) -> Self {
        CccError::Io(e.to_string())
    }
}

impl From<serde_json::Error> for CccError {
    fn from(e: serde_json::Error) -> Self {
        CccError::InvalidArgument(format!("malformed JSON: {e}"))
    }
}

pub type Result<T> = std::result::Result<T, CccError>;
