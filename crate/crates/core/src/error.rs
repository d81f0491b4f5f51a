use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("incompatible states: {0}")]
    IncompatibleStates(String),

    #[error("degenerate superposition: norm {norm:e} is below 1e-12")]
    DegenerateSuperposition { norm: f64 },

    #[error("state is not normalized: squared norm {norm_sq}")]
    NotNormalized { norm_sq: f64 },

    #[error("invalid density matrix: {0}")]
    InvalidDensityMatrix(String),

    #[error("index {index} out of range for {len} parties")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("dense representation of {amplitudes} amplitudes exceeds the limit of {limit}")]
    ResourceLimit { amplitudes: u128, limit: u128 },

    #[error("malformed state file: {0}")]
    MalformedStateFile(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
