use std::fmt;

/// Errors produced by the exact kernels.
///
/// `Usage` marks violated preconditions, `Pole` marks evaluation at a
/// denominator zero, `Parse` carries a position into the offending input
/// string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    Usage(String),
    Pole(String),
    Parse { pos: usize, msg: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Usage(msg) => write!(f, "usage error: {msg}"),
            Error::Pole(msg) => write!(f, "pole error: {msg}"),
            Error::Parse { pos, msg } => write!(f, "parse error at offset {pos}: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn usage(msg: impl Into<String>) -> Error {
    Error::Usage(msg.into())
}

pub(crate) fn pole(msg: impl Into<String>) -> Error {
    Error::Pole(msg.into())
}
