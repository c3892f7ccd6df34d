use crate::domain::Method;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("mesh too coarse: {cells} cells per axis, need at least {min}")]
    MeshTooCoarse { cells: usize, min: usize },

    #[error("unsupported dimension {dim}")]
    Dimension { dim: usize },

    #[error("method {method:?} is {expected}-dimensional but the domain is {actual}-dimensional")]
    DimensionMismatch {
        method: Method,
        expected: usize,
        actual: usize,
    },

    #[error("midpoint mode n/2 requires an even cell count, got {cells}")]
    OddMidpoint { cells: usize },

    #[error("problem order {order} exceeds the supported limit {limit}")]
    Scale { order: usize, limit: usize },

    #[error("polynomial degree {degree} is below the minimum {min}")]
    Degree { degree: usize, min: usize },

    #[error("extent must be positive and finite, got {0}")]
    Extent(f64),

    #[error("mass matrix is not positive definite (pivot {index} = {pivot:e})")]
    Factorization { index: usize, pivot: f64 },

    #[error("QL iteration did not converge for eigenvalue {index} after {iterations} iterations")]
    Convergence { index: usize, iterations: usize },

    #[error("banded solver needs a diagonal stiffness or mass matrix")]
    UnsupportedStructure,

    #[error("invalid solver tolerance {0:e}; must lie in (0, 1e-8]")]
    SolverTolerance(f64),

    #[error("cannot pair spectra: {0}")]
    Pairing(String),

    #[error("eigenvalue {value} at position {index} is not strictly positive")]
    NonPositive { index: usize, value: f64 },

    #[error("rate alpha = {alpha} lies outside (0, {max}]")]
    RateRange { alpha: f64, max: f64 },

    #[error("invalid theorem parameters: {0}")]
    TheoremParams(String),

    #[error("reliability tolerance must be positive, got {0}")]
    Tolerance(f64),

    #[error("growth fit is degenerate: {0}")]
    Fit(String),

    #[error("method {0:?} cannot be tensorized into a 2D spectrum")]
    NotSeparable(Method),

    #[error("{0} is not a power of two")]
    PowerOfTwo(usize),

    #[error("method {0:?} has no closed-form spectrum")]
    NoClosedForm(Method),

    #[error("malformed pencil dump: {0}")]
    Parse(String),
}
