use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension n must be at least {min}, got {got}")]
    Dimension { min: u32, got: u32 },
    #[error("degree vector must be nonempty")]
    NoDegrees,
    #[error("degree p_{index} = {value} is below the minimum {min}")]
    Degree { index: usize, value: u64, min: u64 },
    #[error("codimension r = {0} exceeds the supported maximum of 20")]
    Codimension(usize),
    #[error("class K^{s}_{{{n},{r}}} is empty")]
    EmptyClass { n: u32, r: usize, s: usize },
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("sample coordinate {index} is not strictly positive")]
    NonPositiveCoordinate { index: usize },
    #[error("series with zero constant term is not invertible")]
    NotInvertible,
    #[error("geometric genus vanishes at p = {p}, ratio undefined")]
    ZeroGenus { p: u64 },
    #[error("invalid parameter: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
