use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("{0} is not a prime power")]
    NotPrimePower(u32),
    #[error("bad modulus: {0}")]
    BadModulus(String),
    #[error("no built-in irreducible modulus for GF({p}^{e})")]
    MissingModulus { p: u32, e: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different rings or fields")]
    ContextMismatch,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("no image given for variable {0}")]
    MissingImage(String),
    #[error("no value given for variable {0}")]
    MissingCoordinate(String),
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrix is singular")]
    Singular,
    #[error("group has {order} elements, above the enumeration cap {cap}")]
    OrderExceedsCap { order: u128, cap: u128 },
    #[error("unknown label or set: {0}")]
    UnknownLabel(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("relation {0} has no solution in its coefficient ring")]
    Infeasible(String),
    #[error("certificate error: {0}")]
    Certificate(String),
    #[error("config error: {0}")]
    Config(String),
    #[error("convention bootstrap failed: {0}")]
    Bootstrap(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
