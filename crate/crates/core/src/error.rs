use thiserror::Error;

/// Every failure mode surfaced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not coprime to 3")]
    NotCoprimeToThree(String),
    #[error("gcd(0, 0) is undefined")]
    BothZero,
    #[error("zero input")]
    ZeroInput,
    #[error("{0} is not prime")]
    NotPrime(String),
    #[error("{0} is not congruent to 1 mod 3")]
    WrongResidueClass(String),
    #[error("factoring budget exceeded on cofactor {0}")]
    FactoringBudgetExceeded(String),
    #[error("modulus {0} has norm 3")]
    RamifiedModulus(String),
    #[error("{0} is not primary")]
    NotPrimary(String),
    #[error("modulus norm {norm} exceeds oracle bound {bound}")]
    OracleBoundExceeded { norm: String, bound: u64 },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("point has {got} coordinates, equation has {expected} variables")]
    ArityMismatch { expected: usize, got: usize },
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("degree error: {0}")]
    Degree(String),
    #[error("residue sweep of {tuples} tuples exceeds budget {budget}")]
    SweepBudgetExceeded { tuples: u128, budget: u128 },
    #[error("value range too large for machine-word search: {0}")]
    SearchOverflow(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
