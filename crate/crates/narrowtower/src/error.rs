use thiserror::Error;

/// Errors raised across the library.
///
/// The CLI maps [`Error::Resource`] to exit code 3 and every input-shaped
/// variant to exit code 2.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("{value} is not a fundamental discriminant: {reason}")]
    NotFundamental { value: i64, reason: String },
    #[error("out of family: {0}")]
    OutOfFamily(String),
    #[error("resource bound exceeded: {0}")]
    Resource(String),
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
    #[error("{file}:{line}: {message}")]
    Parse { file: String, line: usize, message: String },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }

    pub(crate) fn inconsistency(msg: impl Into<String>) -> Self {
        Error::Inconsistency(msg.into())
    }

    pub(crate) fn out_of_family(msg: impl Into<String>) -> Self {
        Error::OutOfFamily(msg.into())
    }

    /// True for failures caused by exhausting a configured budget.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::Resource(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
