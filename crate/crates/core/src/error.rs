use thiserror::Error;

/// Errors produced by graph construction, oracle sessions and the reconstruction algorithms.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("capacity exceeded: {what} (size {size}, limit {limit})")]
    Capacity {
        what: &'static str,
        size: u128,
        limit: u128,
    },

    #[error("query budget exhausted after {queries} queries")]
    BudgetExhausted { queries: u64 },

    /// The guessed structural parameter is too small for the hidden graph.
    #[error("parameter {param} too small: {reason}")]
    ParameterTooSmall { param: usize, reason: String },

    /// A cooperative run was cancelled before it finished.
    #[error("run cancelled")]
    Cancelled,

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}
