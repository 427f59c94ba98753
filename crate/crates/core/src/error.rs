use thiserror::Error;

/// Errors raised by the algebra routines.
///
/// `Argument` is a caller mistake (bad index, wrong block sizes).
/// `Consistency` means an identity that must hold by construction failed,
/// e.g. a localization sum that did not cancel its denominator.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("argument error: {0}")]
    Argument(String),
    #[error("internal consistency error: {0}")]
    Consistency(String),
    #[error("verification failure: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn arg<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Argument(msg.into()))
}

pub(crate) fn consistency<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Consistency(msg.into()))
}
