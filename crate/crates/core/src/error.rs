use crate::C64;

/// Crate-wide error type. Variants mirror the failure modes of the
/// numerical operations: range violations, parameter misuse, proximity to
/// singularities, and truncation schemes that fail to converge.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("argument {value} outside supported bound {bound}")]
    Bound { value: u64, bound: u64 },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("evaluation within {radius:e} of a singularity (offending shift {shift})")]
    Singularity { shift: C64, radius: f64 },

    #[error("truncation failed to converge: {0}")]
    Convergence(String),

    #[error("degenerate shift configuration: {0}")]
    Degeneracy(String),

    #[error("contour specification violates enclosure invariants: {0}")]
    Contour(String),

    #[error("outside verified domain: {0}")]
    Domain(String),

    #[error("resource budget exceeded: {0}")]
    Budget(String),
}

pub type Result<T> = std::result::Result<T, Error>;
