use thiserror::Error;

/// Failure classes shared by every module.
///
/// The CLI maps each variant to a distinct exit code, so new variants must
/// be added to that table as well.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Input outside the mathematical domain of an operation.
    #[error("domain: {0}")]
    Domain(String),
    /// A computation would exceed a configured work cap.
    #[error("resource: {0}")]
    Resource(String),
    /// An identity that must hold exactly did not; indicates a formula bug.
    #[error("internal consistency: {0}")]
    Consistency(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }

    pub(crate) fn consistency(msg: impl Into<String>) -> Self {
        Error::Consistency(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
