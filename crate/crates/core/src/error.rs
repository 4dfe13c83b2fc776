use thiserror::Error;

/// Errors surfaced by the library.
///
/// `CriteriaMismatch` and `SingularBoundaryMap` flag internal
/// inconsistencies (two independent characterizations of the same property
/// disagreeing); callers treat them differently from plain input errors.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("invalid fan data ({location}): {message}")]
    InvalidFan { location: String, message: String },

    #[error("degenerate cone {label}: generators are linearly dependent")]
    DegenerateCone { label: String },

    #[error("internal inconsistency on {label}: {what}")]
    CriteriaMismatch { label: String, what: String },

    #[error("mode (m={m}, gamma={gamma}) boundary map is singular; its determinant must never vanish")]
    SingularBoundaryMap { m: usize, gamma: usize },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("missing data: {0}")]
    MissingData(String),

    #[error("weight {delta} outside admissible window ({lo}, {hi})")]
    WeightOutsideWindow {
        delta: String,
        lo: String,
        hi: String,
    },

    #[error("polytope is not compatible with the fan: vertex of cone {cone} violates the inequality of ray {ray}")]
    VertexViolatesInequality { cone: String, ray: usize },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
