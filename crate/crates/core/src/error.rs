use thiserror::Error;

/// Errors raised by the numerical kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("subcritical omega {omega}: below the critical value {critical}, only one real root")]
    Subcritical { omega: f64, critical: f64 },
    #[error("tangent argument too close to a pole: {0}")]
    NearPole(String),
    #[error("singular configuration: {0}")]
    Singular(String),
    #[error("point ({x}, {y}) is off the ellipse by {residual:e}")]
    OffEllipse { x: f64, y: f64, residual: f64 },
    #[error("degenerate chord: inner product {inner} between adjacent vectors {index} and {next}")]
    ChordDegenerate {
        index: usize,
        next: usize,
        inner: f64,
    },
    #[error("invalid circle configuration: {0}")]
    Geometry(String),
    #[error("no tangent chord from angle {0}")]
    NoTangent(f64),
    #[error("no solution: {0}")]
    NoSolution(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
