use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian (max deviation {deviation:.3e}, allowed {allowed:.3e})")]
    NotHermitian { deviation: f64, allowed: f64 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid group order {0}: every cyclic factor must have order >= 2")]
    InvalidOrder(i64),

    #[error("group mismatch: {0}")]
    GroupMismatch(String),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("invalid dimension {0}")]
    InvalidDimension(usize),

    #[error("dimension {0} is even; use leonhardt_frame or a tensor product of frames instead")]
    EvenDimension(usize),

    #[error("dimension {0} is not an odd prime")]
    NotOddPrime(usize),

    #[error("not a projective representation: {0}")]
    NotProjective(String),

    #[error("invalid projective frame: {0}")]
    InvalidFrame(String),

    #[error("operators do not form a frame (lower frame bound {lower_bound:.3e})")]
    NotAFrame { lower_bound: f64 },

    #[error("characteristic function is not conjugate symmetric at {0}")]
    NotConjugateSymmetric(String),

    #[error("cocycle mismatch: {0}")]
    CocycleMismatch(String),

    #[error("not normalized: {0}")]
    NotNormalized(String),

    #[error("shape mismatch: expected {expected}, got {got}")]
    ShapeMismatch { expected: usize, got: usize },

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("invalid tolerance: {0}")]
    InvalidTolerance(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
