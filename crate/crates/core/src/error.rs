use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {p} is ramified in the splitting field")]
    Ramified { p: u64 },
    #[error("prime {p} is not a good prime for {torus}")]
    NotGood { p: u64, torus: String },
    #[error("{0} is not a fundamental discriminant")]
    NotFundamental(i64),
    #[error("invalid field descriptor: {0}")]
    InvalidField(String),
    #[error("enumeration budget exceeded: need {needed} evaluations, budget {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("not stabilized within {levels} levels")]
    NotStabilized { levels: u32 },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("Assumption violated: Q-rank {0}")]
    AssumptionViolated(usize),
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("invalid group table: {0}")]
    InvalidGroup(String),
    #[error("invalid lattice action: {0}")]
    InvalidAction(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("tolerance {tol} unreachable within {evaluations} evaluations")]
    ToleranceUnreachable { tol: f64, evaluations: usize },
    #[error("place set is missing bad prime {0}")]
    MissingBadPrime(u64),
    #[error("good-prime factor at p = {p} is {value}, expected 1")]
    GoodFactorMismatch { p: u64, value: String },
    #[error("config error: {0}")]
    Config(String),
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
