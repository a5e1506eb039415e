use thiserror::Error;

use crate::metric::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed text input. `line` is 1-based within the parsed section.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unsupported norm exponent `{0}` (only 1 and inf are exact over the rationals)")]
    UnsupportedNorm(String),

    #[error("vertex count must be at least 2, got {0}")]
    TooFewVertices(usize),

    #[error("size mismatch: expected {expected}, got {actual}")]
    SizeMismatch { expected: usize, actual: usize },

    #[error("points must share one dimension: point {index} has {actual} coordinates, expected {expected}")]
    RaggedPoints {
        index: usize,
        expected: usize,
        actual: usize,
    },

    #[error("points {0} and {1} coincide")]
    DuplicatePoints(usize, usize),

    #[error("not a valid {mode}: {report}")]
    InvalidMetric {
        mode: crate::metric::Mode,
        report: ValidationReport,
    },

    #[error("cut is not canonical: {0}")]
    NonCanonicalCut(String),

    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("vertex {0} is isolated; no sphere-of-influence graph has an isolated vertex")]
    IsolatedVertex(usize),

    #[error("invalid nearest-neighbor map: {0}")]
    InvalidNeighborMap(String),

    #[error("n = {n} exceeds the configured bound of {max}")]
    ResourceLimit { n: usize, max: usize },
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
