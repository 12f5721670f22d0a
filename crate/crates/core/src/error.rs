use alloc::string::String;
use core::fmt;

use crate::presentation::ParseError;

/// Failure of a group operation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    Parse(ParseError),
    /// An enumeration would exceed its configured size limit.
    CapExceeded {
        what: &'static str,
        cap: usize,
    },
    /// The inputs do not satisfy the operation's precondition.
    Precondition(&'static str),
    /// An internal consistency check failed; this indicates a bug or a
    /// predicate that does not behave like the documented preorder.
    InvariantViolation(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Parse(e) => write!(f, "{e}"),
            Error::CapExceeded { what, cap } => {
                write!(f, "{what} exceeds the configured cap of {cap} elements")
            }
            Error::Precondition(msg) => write!(f, "precondition violated: {msg}"),
            Error::InvariantViolation(msg) => write!(f, "invariant violated: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

impl From<ParseError> for Error {
    fn from(e: ParseError) -> Self {
        Error::Parse(e)
    }
}
