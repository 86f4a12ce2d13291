use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("not a polynomial in {0}")]
    NotPolynomialIn(String),
    #[error("invalid partition {0:?}: parts must be positive and weakly decreasing")]
    InvalidPartition(Vec<i64>),
    #[error("degree mismatch: {0} versus {1}")]
    SizeMismatch(usize, usize),
    #[error("degree {degree} exceeds the Macdonald budget {budget}")]
    DegreeBudget { degree: u32, budget: u32 },
    #[error("expected a homogeneous symmetric function")]
    NotHomogeneous,
    #[error("index {index} out of range {range}")]
    OutOfRange { index: i64, range: String },
    #[error("unsupported plethysm: {0}")]
    UnsupportedPlethysm(String),
    #[error("truncation {truncation} is below the input degree {degree}")]
    Truncation { truncation: usize, degree: usize },
    #[error("solve failed: {0}")]
    Solve(String),
    #[error("not symmetric in q and t: {0}")]
    NotSymmetric(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("cache: {0}")]
    Cache(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
