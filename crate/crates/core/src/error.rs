use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("invalid modulus: {0}")]
    BadModulus(String),
    #[error("modulus is reducible over F_{0}")]
    ReducibleModulus(u32),
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("incompatible fields: {0}")]
    IncompatibleFields(String),
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("inexact polynomial division")]
    InexactDivision,
    #[error("singular matrix")]
    Singular,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
    #[error("no cyclic vector among {0} candidates")]
    NoCyclicVector(usize),
    #[error("bad specialization point: {0}")]
    BadPoint(String),
    #[error("inseparable additive polynomial (a0 = 0)")]
    Inseparable,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("element is not in the algebra span")]
    NotInAlgebra,
    #[error("internal error: {0}")]
    Internal(String),
}
