use thiserror::Error;

use crate::quad::QuadratureResult;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// An argument outside the domain where the quantity is defined or used.
    #[error("domain error: {0}")]
    Domain(String),

    /// A quadrature did not reach the requested tolerance.
    #[error("quadrature did not converge: value {}, error estimate {:e} after {} evaluations", .0.value, .0.abs_error_estimate, .0.evaluations)]
    Quadrature(QuadratureResult),

    /// Series self-check failed: doubling the cutoff moved the sum by more than the tolerance.
    #[error("series tail not converged: cutoff doubling changed the sum by {delta:e} (tol {tol:e})")]
    Series { delta: f64, tol: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
