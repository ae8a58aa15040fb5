use thiserror::Error;

/// Errors produced by the library.
///
/// The variants are grouped so that the CLI can map them onto its exit codes:
/// input problems, unsupported ideal classes, resource guards and failed
/// internal verifications.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ring mismatch: operands live in different polynomial rings")]
    RingMismatch,

    #[error("exponent overflow: {0}")]
    ExponentOverflow(String),

    #[error("resource guard exceeded: {what} needs {needed}, limit is {limit}")]
    ResourceGuard { what: String, needed: u128, limit: u128 },

    #[error("unsupported ideal class: {0}")]
    UnsupportedClass(String),

    #[error("quotient is not artinian: {0}")]
    NotArtinian(String),

    #[error("ideal is not contained in the square of the maximal ideal")]
    NotInMaxSquared,

    #[error("ring is not F-split at q = {q}: no witness exists")]
    NotFSplit { q: u64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("internal verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn guard(what: impl Into<String>, needed: u128, limit: u128) -> Self {
        Error::ResourceGuard { what: what.into(), needed, limit }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
