use thiserror::Error;

/// Error type shared by the whole crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// A caller passed an argument outside the declared domain.
    #[error("argument error: {0}")]
    Argument(String),
    /// A structural invariant of a value does not hold.
    #[error("invariant violated: {0}")]
    Invariant(String),
    /// An operation requires a property the input lacks.
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// A text-format input could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn argument(msg: &str) -> Self {
        Error::Argument(msg.to_string())
    }
    pub fn invariant(msg: &str) -> Self {
        Error::Invariant(msg.to_string())
    }
    pub fn precondition(msg: &str) -> Self {
        Error::Precondition(msg.to_string())
    }
    pub fn parse(msg: &str) -> Self {
        Error::Parse(msg.to_string())
    }
}
