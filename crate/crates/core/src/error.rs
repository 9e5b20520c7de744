use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    /// Input outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Two grid functions (or a grid function and a problem) do not live on
    /// the same uniform grid.
    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    /// Non-finite samples or an otherwise unusable integrand.
    #[error("quadrature error: {0}")]
    Quadrature(String),

    /// The local-max certificate could not be formed.
    #[error("certificate error: {0}")]
    Certificate(String),
}

pub type Result<T> = std::result::Result<T, Error>;
