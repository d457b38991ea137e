use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("matrix is not unimodular (det = {0})")]
    NotUnimodular(String),

    #[error("polytope is unbounded")]
    Unbounded,

    #[error("polytope is empty")]
    EmptyPolytope,

    #[error("zero polynomial")]
    ZeroPolynomial,

    #[error("could not parse rational {0:?}")]
    ParseRational(String),

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("translation does not preserve the {q}-torsion grid")]
    GridNotPreserved { q: u32 },

    #[error("invalid operand: {0}")]
    InvalidOperand(String),

    #[error("integrity failure: {0}")]
    Integrity(String),

    #[error("empty generator list")]
    NoGenerators,

    #[error("piece budget of {budget} exceeded ({found} pieces)")]
    PieceBudget { budget: usize, found: usize },

    #[error("evaluation at a pole")]
    Pole,

    #[error("{0} is not a breakpoint")]
    NotBreakpoint(String),

    #[error("json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(format!("{} at line {} column {}", e, e.line(), e.column()))
    }
}
