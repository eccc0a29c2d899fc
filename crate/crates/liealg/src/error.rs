use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("generator `{0}` declared twice")]
    DuplicateGenerator(String),
    #[error("generator name `{0}` already in use")]
    NameClash(String),
    #[error("[{0},{0}] must vanish")]
    SelfBracket(String),
    #[error("[{a},{b}] given twice with inconsistent values")]
    InconsistentBracket { a: String, b: String },
    #[error("Jacobi identity fails for ({a}, {b}, {c}): residual {residual}")]
    JacobiViolation {
        a: String,
        b: String,
        c: String,
        residual: String,
    },
    #[error("basis change is not invertible: {0}")]
    SingularMap(String),
    #[error("schedule misses generator `{0}`")]
    IncompleteSchedule(String),
    #[error("[{a},{b}] has a negative power of ε; the contraction is undefined")]
    NegativePower { a: String, b: String },
    #[error("generator mapping is not a bijection: {0}")]
    NotBijective(String),
    #[error("polynomial uses generator index {index} outside an algebra of dimension {dim}")]
    ForeignWord { index: usize, dim: usize },
    #[error("invalid algebra JSON: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;
