use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("dimensions must be positive, got {width}x{height}")]
    EmptyDimensions { width: usize, height: usize },

    #[error("expected {expected} samples, got {actual}")]
    SampleCount { expected: usize, actual: usize },

    #[error("sample {0} outside [0, 1]")]
    SampleOutOfRange(f64),

    #[error("dimension mismatch: {}x{} vs {}x{}", left.0, left.1, right.0, right.1)]
    DimensionMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("{0} must not be empty")]
    EmptyInput(&'static str),

    #[error("degenerate mask: {0}")]
    DegenerateMask(&'static str),

    #[error("invalid scene: {0}")]
    InvalidScene(String),

    #[error("scene parse error at line {line}: {message}")]
    SceneParse { line: usize, message: String },

    #[error("parameter out of range: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
