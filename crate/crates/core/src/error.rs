use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0}")]
    InvalidInput(String),

    #[error("dimension mismatch: expected {expected}-dimensional ket, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("ket is not normalized (norm² = {0})")]
    NotNormalized(f64),

    #[error("channel weights are undefined for the zero ket")]
    UndefinedWeights,

    #[error("value not representable exactly: {0}")]
    NotRepresentable(String),

    #[error("internal error: {0}")]
    Internal(String),

    #[error("row {row}: {message}")]
    Parse { row: usize, message: String },

    #[error("no measurements")]
    NoMeasurements,

    #[error("insufficient data: {found} rows for transition {transition}, need at least {required}")]
    InsufficientData { transition: String, found: usize, required: usize },

    #[error("singular fit: {0}")]
    SingularFit(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("constants file: {0}")]
    Constants(String),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
