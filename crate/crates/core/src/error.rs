use thiserror::Error;

/// Errors produced by the algebra, geometry and linkage layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands use different quaternion signatures")]
    SignatureMismatch,
    #[error("quaternion has zero norm and cannot be inverted")]
    NonInvertible,
    #[error("non-generic input: {0}")]
    NonGeneric(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
    #[error("quadrance is undefined for a null point")]
    NullPoint,
    #[error("expected a vectorial quaternion")]
    NotVectorial,
    /// Raised by the exact backend when a value would leave the supported
    /// field (rationals extended by at most one square root).
    #[error("not representable exactly: {0}")]
    Inexact(String),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("i/o: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn non_generic(msg: impl Into<String>) -> Self {
        Error::NonGeneric(msg.into())
    }

    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse { pos, msg: msg.into() }
    }

    pub(crate) fn degenerate(msg: impl Into<String>) -> Self {
        Error::Degenerate(msg.into())
    }
}
