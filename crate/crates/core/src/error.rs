use thiserror::Error;

/// Errors raised by the curvature toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid curvature operator: {0}")]
    InvalidOperator(String),

    #[error("operator is not Einstein: traceless Ricci norm {norm:.3e} exceeds {tolerance:.0e}")]
    NotEinstein { norm: f64, tolerance: f64 },

    #[error("invalid Berger data: {0}")]
    InvalidBerger(String),

    #[error("degenerate plane: |u^v| = {0:.3e}")]
    DegeneratePlane(f64),

    #[error("invalid plane: {0}")]
    InvalidPlane(String),

    #[error("parameter out of domain: {0}")]
    Domain(String),

    #[error("usage: {0}")]
    Usage(String),

    #[error("surd arithmetic: {0}")]
    Surd(String),

    #[error("format: {0}")]
    Format(String),

    #[error("bound violated: {0}")]
    BoundViolated(String),
}

pub type Result<T> = std::result::Result<T, Error>;
