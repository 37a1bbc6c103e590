use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// `a` has no inverse modulo `m`.
    #[error("{a} is not a unit modulo {m}")]
    NotAUnit { a: i64, m: u64 },

    /// A configured size limit would be exceeded.
    #[error("size limit exceeded: {what} is {value}, limit is {limit}")]
    Size {
        what: &'static str,
        value: String,
        limit: String,
    },

    /// The operation is not defined for this input.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// Dimensions of two operands disagree.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// An internal invariant failed. Always a bug.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
