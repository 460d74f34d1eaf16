//! Crate-wide error type.
//!
//! Three kinds of failure are distinguished because the command line maps
//! them to different exit codes: malformed textual input (`Parse`), values
//! that are well-formed but violate a precondition (`Input`), and requests
//! that fall outside a function's mathematical domain (`Domain`). A failed
//! *check* (for example a certificate premise that evaluates to false) is not
//! an error; checks report their outcome through their return value.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Textual input that could not be parsed; `position` is a byte offset
    /// into the offending string.
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    /// Well-formed input violating a precondition (degree mismatch, subgroup
    /// not contained in its parent, unsupported search shape, ...).
    #[error("invalid input: {0}")]
    Input(String),

    /// A request outside the mathematical domain of an operation (local
    /// action at a non-interior vertex, rewriting a word with nonzero level,
    /// ...).
    #[error("domain error: {0}")]
    Domain(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse { position, message: message.into() }
    }

    pub fn input(message: impl Into<String>) -> Self {
        Error::Input(message.into())
    }

    pub fn domain(message: impl Into<String>) -> Self {
        Error::Domain(message.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
