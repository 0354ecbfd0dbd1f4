use thiserror::Error;

/// Errors raised by the library. CLI exit codes are derived from the variant.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("p must be prime (got {0})")]
    NotPrime(u64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("not a complex: differential composite is nonzero at degree {0}")]
    NotAComplex(i64),
    #[error("a finite degree window is required: {0}")]
    WindowRequired(String),
    #[error("resource guard: {what} with n = {n} exceeds the ceiling {max} (raise with --guard-n or PLIE_GUARD_MAX_N)")]
    Guard { what: &'static str, n: usize, max: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
