use thiserror::Error;

/// Errors reported by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed argument: a value that can never be valid for the operation.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Structurally valid argument that fails an operation precondition.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Text format parse failure.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// An internal construction produced output that fails its own contract.
    /// This indicates a defect, never a caller error.
    #[error("construction invariant violated: {0}")]
    ConstructionInvariant(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
