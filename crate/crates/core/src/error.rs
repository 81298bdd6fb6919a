use thiserror::Error;

/// Errors raised by the labeling library.
#[derive(Debug, Error)]
pub enum GdlError {
    #[error("invalid circuit family: {0}")]
    InvalidFamily(String),

    #[error("labeling has {actual} labels but the family has {expected} vertices")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("circuit index {index} out of range (family has {count} circuits)")]
    CircuitOutOfRange { index: usize, count: usize },

    #[error("circuit {index} has length {length}, expected {expected}")]
    WrongCircuitLength {
        index: usize,
        length: usize,
        expected: usize,
    },

    #[error("embedding collides: {0}")]
    Collision(String),

    #[error("input labeling is not a graceful difference labeling")]
    NotGdl,

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal error: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = GdlError> = std::result::Result<T, E>;
