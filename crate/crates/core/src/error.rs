use thiserror::Error;

/// Errors raised while building models or evaluating operations on them.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Bad caller input: out-of-range labels, wrong sizes, empty bases.
    #[error("input error: {0}")]
    Input(String),

    /// A braid word token could not be accepted. `position` is 1-based.
    #[error("parse error at token {position} ({token:?}): {reason}")]
    Parse {
        position: usize,
        token: String,
        reason: String,
    },

    /// Model file is well-formed JSON but violates the model schema.
    #[error("schema error: {0}")]
    Schema(String),

    /// Model data is incomplete for the requested check.
    #[error("data error: {0}")]
    Data(String),

    #[error("numeric error: {0}")]
    Numeric(String),

    /// Malformed JSON, with 1-based line and column.
    #[error("malformed model file at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Json {
            line: err.line(),
            column: err.column(),
            message: err.to_string(),
        }
    }
}
