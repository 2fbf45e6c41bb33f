use thiserror::Error;

/// Errors raised by the solvers and geometric routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("unsupported dimension {0}: only n = 3 has a closed-form radial solution")]
    UnsupportedDimension(usize),

    #[error("no convergence after {iterations} iterations (last bracket [{lo:.6e}, {hi:.6e}])")]
    NoConvergence { iterations: usize, lo: f64, hi: f64 },

    #[error("quadrature did not reach tolerance {tol:.1e} (estimated error {estimate:.3e})")]
    Quadrature { tol: f64, estimate: f64 },

    #[error("isoperimetric inequality violated: deficit {deficit:.6e} < 0")]
    Isoperimetric { deficit: f64 },

    #[error("degenerate profile: {0}")]
    DegenerateProfile(String),

    #[error("sampling budget exhausted at {cells} cells (estimated error {estimate:.3e})")]
    SamplingBudget { cells: usize, estimate: f64 },

    #[error("mesh generation failed: {0}")]
    Mesh(String),

    #[error("factorization broke down at pivot {0}")]
    Factorization(usize),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}
