use thiserror::Error;

/// Errors produced by the geometry, construction and I/O layers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("zero-length vector cannot be normalized")]
    ZeroVector,
    #[error("arc endpoints are equal or antipodal")]
    DegenerateArc,
    #[error("hemispheres are equal or opposite; no lune")]
    DegenerateLune,
    #[error("points are not contained in any open hemisphere")]
    NoEnclosingHemisphere,
    #[error("degenerate hull: {0}")]
    DegenerateHull(&'static str),
    #[error("hemisphere does not support the body (min dot {0:e})")]
    NotSupporting(f64),
    #[error("radius {0} outside the admissible range")]
    BadRadius(f64),
    #[error("target thickness {0} cannot be bracketed")]
    Unreachable(f64),
    #[error("invalid construction input: {0}")]
    InvalidSpec(String),
    #[error("vertex count {0} must be odd and at least 3")]
    EvenN(usize),
    #[error("half-plane intersection has empty interior")]
    EmptyInterior,
    #[error("body is not inside the open hemisphere around the projection pole")]
    NotInHemisphere,
    #[error("projection pole is not an interior point of the body")]
    PoleNotInterior,
    #[error("inconsistent verdicts: {0}")]
    InconsistentVerdicts(String),
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
