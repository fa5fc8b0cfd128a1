use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors reported by the library's fallible operations.
///
/// Contract violations that cannot arise from end-user input (index out of a
/// table's range, mismatched internal buffers) panic instead.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Full enumeration would exceed the composition budget.
    #[error("enumeration of {required} compositions exceeds the limit of {limit}")]
    TooLarge { required: u128, limit: u128 },

    /// Inputs whose dimensions must agree do not.
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn dimension(msg: impl Into<String>) -> Self {
        Error::Dimension(msg.into())
    }
}
