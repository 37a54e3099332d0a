use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not a divisor of 24")]
    NotADivisorOf24(i64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported algebra {0}")]
    UnsupportedType(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("element is not homogeneous")]
    NotHomogeneous,
    #[error("ad-exponential did not terminate within {0} steps")]
    AdExpCap(usize),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("io: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
