use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension {dim} exceeds the exact-eigendecomposition cap of {cap}")]
    DimensionCap { dim: usize, cap: usize },

    #[error("state vector is not normalized: squared norm {norm_sq} (tolerance {tol})")]
    NotNormalized { norm_sq: f64, tol: f64 },

    #[error("matrix is not Hermitian: max |H - H^dagger| entry is {max_dev}")]
    NotHermitian { max_dev: f64 },

    #[error("invalid value: {0}")]
    InvalidValue(String),

    #[error("grid mismatch: operands are tabulated on different ontic grids")]
    GridMismatch,

    #[error("eigendecomposition failed to converge")]
    EigenFailure,

    #[error("zero posterior weight: revealed cell does not intersect the support")]
    EmptyPosterior,

    #[error("wrong assignment mode: expected {expected}, got {found}")]
    WrongMode {
        expected: &'static str,
        found: &'static str,
    },

    #[error("epistemic cells are not disjoint")]
    CellsNotDisjoint,

    #[error("missing conditional-probability entries: {}", .0.join(", "))]
    MissingEntries(Vec<String>),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
