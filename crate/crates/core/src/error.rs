use alloc::string::String;
use core::fmt;

/// Errors raised by the combinatorial engine.
///
/// Inapplicable flips and missing translation solutions are not errors; they
/// are reported through ordinary return values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A precondition on the arguments was violated.
    Usage(String),
    /// The request is well formed but exceeds what exhaustive methods can do.
    Capability(String),
    /// A textual representation could not be parsed.
    Parse(String),
}

pub type Result<T> = core::result::Result<T, Error>;

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn capability(msg: impl Into<String>) -> Self {
        Error::Capability(msg.into())
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Usage(msg) => write!(f, "usage error: {msg}"),
            Error::Capability(msg) => write!(f, "capability error: {msg}"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
