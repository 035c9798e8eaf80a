use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid spectrum: {0}")]
    InvalidSpectrum(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("zero outcome probability: every p(m|a) vanished on the ensemble")]
    ZeroProbability,

    #[error("measurement incomplete: max-entry deviation {deviation:e} exceeds tolerance {tolerance:e}")]
    Incomplete { deviation: f64, tolerance: f64 },

    #[error("degenerate hull input: {0}")]
    DegenerateHull(String),

    #[error("no tangent bracket found: {0}")]
    NoBracket(String),

    #[error("curvature sign pattern fits none of +, -, 0, -+: {0}")]
    Unclassifiable(String),

    #[error("target {target} outside attainable range [{min}, {max}]")]
    TargetOutOfRange { target: f64, min: f64, max: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
