use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A token in textual input could not be read.
    #[error("cannot parse {what}: offending token `{token}`")]
    Parse { what: &'static str, token: String },

    /// An operation was applied outside its domain.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
