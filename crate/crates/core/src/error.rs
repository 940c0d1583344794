use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("universe mismatch: `{left}` vs `{right}`")]
    UniverseMismatch { left: String, right: String },

    #[error("size cap: {what} is {got}, at most {max} allowed")]
    SizeCap { what: String, got: usize, max: usize },

    #[error("{op}: the class must be nonempty")]
    EmptyClass { op: &'static str },

    #[error("{op}: precondition failed: {reason}")]
    Precondition { op: &'static str, reason: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid universe: {0}")]
    InvalidUniverse(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),
}

impl Error {
    pub(crate) fn precondition(op: &'static str, reason: impl Into<String>) -> Self {
        Error::Precondition { op, reason: reason.into() }
    }

    pub(crate) fn cap(what: impl Into<String>, got: usize, max: usize) -> Self {
        Error::SizeCap { what: what.into(), got, max }
    }

    /// Whether this error comes from a resource cap rather than bad input.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::SizeCap { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
