use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A configured resource guard would be exceeded.
    #[error("guard exceeded: {what} needs {requested}, limit is {limit}")]
    Guard {
        what: &'static str,
        requested: String,
        limit: u64,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn guard(what: &'static str, requested: impl ToString, limit: u64) -> Self {
        Error::Guard {
            what,
            requested: requested.to_string(),
            limit,
        }
    }

    pub fn is_guard(&self) -> bool {
        matches!(self, Error::Guard { .. })
    }
}
