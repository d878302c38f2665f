use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("graph has {0} vertices; at most 64 are supported")]
    TooManyVertices(usize),
    #[error("{what} exceeds the cap of {cap}")]
    CapExceeded { what: &'static str, cap: usize },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
