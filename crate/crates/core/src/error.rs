use thiserror::Error;

/// Errors raised by the subspace-angle library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Shapes or ambient dimensions that do not fit together.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// Arguments outside the domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A numerical procedure failed or produced an ambiguous decision.
    #[error("numerical error: {0}")]
    Numerical(String),

    /// A Gram matrix that must be inverted is (numerically) singular.
    #[error("degenerate basis: {0}")]
    DegenerateBasis(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn dim_err(msg: impl Into<String>) -> Error {
    Error::Dimension(msg.into())
}

pub(crate) fn domain_err(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
