use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable arena mismatch: {0}")]
    ArenaMismatch(String),
    #[error("polynomial is not divisible: {0}")]
    NotDivisible(String),
    #[error("series must start with the linear term 1*x: {0}")]
    BadLeadingTerm(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported group: {0}")]
    UnsupportedGroup(String),
    #[error("weight {0} is not primitive")]
    NonPrimitiveWeight(String),
    #[error("zero weight")]
    ZeroWeight,
    #[error("fixed-point sum does not reduce to a polynomial: {0}")]
    SingularSum(String),
    #[error("class has non-integer coefficients: {0}")]
    NonIntegerClass(String),
    #[error("characteristic number is not constant: {0}")]
    NonConstantResult(String),
    #[error("a weight vanishes at the evaluation point {0}")]
    SingularPoint(String),
    #[error("truncation order {have} is below the required {need}")]
    TruncationTooLow { have: u32, need: u32 },
    #[error("linear system has no integer solution: {0}")]
    NonIntegerSolution(String),
    #[error("search space of {size} assignments exceeds budget {budget}")]
    BudgetExceeded { size: u128, budget: u128 },
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
