use thiserror::Error;

/// Failure classes shared by every module.
///
/// `Usage` is a caller contract violation (bad order, wrong shape, a
/// hypothesis that does not hold), `Input` is a malformed file or value,
/// `Numeric` is a floating-point routine that failed to converge and
/// `Internal` means a ring contract was broken (e.g. an exact division that
/// left a remainder).
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("usage error: {0}")]
    Usage(String),
    #[error("input error in `{field}`: {message}")]
    Input { field: String, message: String },
    #[error("numeric error: {0}")]
    Numeric(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn input(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Input {
            field: field.into(),
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
