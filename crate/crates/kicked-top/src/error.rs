use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("spin label {0} is not a nonnegative multiple of 1/2")]
    InvalidSpin(f64),

    #[error("{what} needs {requested} spins but the cap is {cap} (2^{requested} amplitudes)")]
    ResourceLimit {
        what: &'static str,
        requested: u32,
        cap: u32,
    },

    #[error("matrix is not unitary: ‖U†U − I‖_F = {defect:.3e} (tolerance {tol:.1e})")]
    NotUnitary { defect: f64, tol: f64 },

    #[error("operator does not commute with J²: ‖[U, J²]‖_F = {commutator_norm:.3e}")]
    SymmetryBroken { commutator_norm: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("{0}")]
    InvalidInput(String),

    #[error("linear algebra backend error: {0}")]
    Linalg(#[from] ndarray_linalg::error::LinalgError),

    #[error("manifest error: {0}")]
    Manifest(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
