//! Error type shared by all modules.

use std::fmt;

/// Library-wide error type.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Evaluation outside the profile's domain (t <= 0, hyperplane guard band, ...).
    Domain(String),
    /// Requested derivative order or dimension exceeds what the object supports.
    Capability(String),
    /// Invalid parameter value at construction or call time.
    Parameter(String),
    /// An integral required to be finite diverged (or the construction needs it finite).
    Divergent(String),
    /// File or stream I/O failed.
    Io(String),
    /// Malformed input (CSV, profile DSL, ladder spec).
    Parse(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Capability(msg) => write!(f, "capability error: {msg}"),
            Error::Parameter(msg) => write!(f, "parameter error: {msg}"),
            Error::Divergent(msg) => write!(f, "divergent: {msg}"),
            Error::Io(msg) => write!(f, "io error: {msg}"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
