use thiserror::Error;

/// Every failure the engine can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid ring parameters: {0}")]
    InvalidRing(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("element has negative pi-adic valuation {0}")]
    NegativeValuation(i64),
    #[error("incompatible coefficient rings: {0}")]
    RingMismatch(String),
    #[error("sequence operator undefined: {0}")]
    Sequence(&'static str),
    #[error("pi-adic precision exhausted")]
    PrecisionExhausted,
    #[error("requested pi-adic precision {0} does not fit machine words")]
    PrecisionOverflow(u32),
    #[error("coefficient not divisible by pi: {0}")]
    NotDivisible(String),
    #[error("integrality failure in {context}: {witness}")]
    NotIntegral { context: String, witness: String },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("inhomogeneous input: {0}")]
    Inhomogeneous(String),
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
