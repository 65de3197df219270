use thiserror::Error;

/// Errors raised by the library.
///
/// The variants split along the CLI exit-code boundary: [`Error::Invariant`]
/// signals an internal consistency failure, everything else is a rejected
/// input or request.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid skeleton: {0}")]
    InvalidSkeleton(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("resource guard: {0}")]
    Resource(String),
    #[error("invariant breach: {0}")]
    Invariant(String),
}

impl Error {
    pub fn is_invariant_breach(&self) -> bool {
        matches!(self, Error::Invariant(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
