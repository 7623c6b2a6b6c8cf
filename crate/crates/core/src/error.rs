use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Shapes of tensors or matrices do not agree with the declared ranks.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("inadmissible Dynkin type: {0}")]
    Inadmissible(String),

    #[error("not a level-{level} NIM-rep: {reason}")]
    NotNimRep { level: u32, reason: String },

    #[error("search budget exceeded after {nodes} nodes")]
    BudgetExceeded { nodes: u64 },

    #[error("out of validated scope: {0}")]
    OutOfScope(String),

    #[error("value does not fit the file format: {0}")]
    Overflow(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
