use thiserror::Error;

/// Errors produced by every fallible operation in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A value left the 127-bit range.
    #[error("arithmetic overflow: result exceeds 2^127 - 1")]
    Overflow,
    /// An enumeration would evaluate more terms than the configured budget allows.
    #[error("enumeration of {required} terms exceeds budget of {budget}")]
    BoundExceeded { required: u128, budget: u128 },
    /// The input is valid but outside what the implementation can decide exactly.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// A table would exceed the configured memory budget.
    #[error("resource limit: {0}")]
    ResourceLimit(String),
    /// An exactness invariant failed (e.g. a division that must be exact was not).
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
