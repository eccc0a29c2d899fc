use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension signature must be non-empty with every factor >= 2, got {0:?}")]
    InvalidSignature(Vec<usize>),

    #[error("matrix side {side} does not match signature total dimension {expected}")]
    SideMismatch { side: usize, expected: usize },

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("empty operator sequence")]
    EmptySequence,

    #[error("factor index {index} out of range for {n_factors} factors")]
    FactorOutOfRange { index: usize, n_factors: usize },

    #[error("the set of kept factors is empty")]
    EmptyKeep,

    #[error("operator is not hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("trace {trace} differs from 1")]
    BadTrace { trace: f64 },

    #[error("density matrix has eigenvalue {min_eigenvalue:e} below tolerance")]
    NotPositive { min_eigenvalue: f64 },

    #[error("tolerance must be positive")]
    BadTolerance,

    #[error("amplitude pair {index} is not normalized (|a|^2+|b|^2 = {norm})")]
    Unnormalized { index: usize, norm: f64 },

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("system of {size} factors exceeds the relevant-space cap {cap}")]
    SystemTooLarge { size: usize, cap: usize },

    #[error("operation requires qubit factors, found dimension {0}")]
    NotQubit(usize),

    #[error("dense representation of {qubits} qubits exceeds the cap {cap}")]
    DenseCapExceeded { qubits: usize, cap: usize },

    #[error("series too short: {len} samples, need at least {min}")]
    SeriesTooShort { len: usize, min: usize },

    #[error("invalid series: {0}")]
    InvalidSeries(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("pointer basis requested for a verdict that does not decohere")]
    NotDecohering,

    #[error("matrix JSON: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;
