use thiserror::Error;

/// Errors raised by the algebra, evaluation and identity machinery.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("{what} index {index} out of range (bound {bound})")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        bound: usize,
    },

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("invalid action: {0}")]
    InvalidAction(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("degree mismatch for {var}: expected degree {expected}, found {found}")]
    DegreeMismatch {
        var: String,
        expected: usize,
        found: String,
    },

    /// A configured resource cap would be exceeded. Never converted into a
    /// partial answer.
    #[error("resource cap exceeded: {what} needs {needed}, limit is {limit}")]
    Truncated {
        what: &'static str,
        needed: u64,
        limit: u64,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("malformed definition: {0}")]
    Format(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn is_truncation(&self) -> bool {
        matches!(self, Error::Truncated { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
