use thiserror::Error;

/// Errors surfaced by the library.
///
/// Variants line up with the CLI exit codes: [`Error::Resource`] maps to the
/// resource code, parse and usage problems to the usage code.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid Coxeter type: {0}")]
    InvalidType(String),

    #[error("type mismatch: {0}")]
    TypeMismatch(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("outside the domain: {0}")]
    Domain(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("resource budget exceeded: {0}")]
    Resource(String),

    /// An internal consistency check failed; this means a bug, not bad input.
    #[error("integrity failure: {0}")]
    Integrity(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
