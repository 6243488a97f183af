use thiserror::Error;

/// Errors raised by the library.
///
/// `Usage` covers caller mistakes (bad shapes, malformed text, out-of-range
/// indices). `Internal` signals a broken invariant inside the algebra, such as
/// an unsolvable system that must be solvable in a semisimple Lie algebra.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("usage error: {0}")]
    Usage(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("internal error: {0}")]
    Internal(String),
    #[error("unrecognized characteristic {0}")]
    UnrecognizedCharacteristic(String),
    #[error("search limit exceeded after {0} subsets")]
    SearchLimit(u64),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Usage(msg.into()))
}
