use thiserror::Error;

/// Errors raised by field construction, character sums and the derived checks.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("enumeration of {requested} items exceeds the budget of {budget}")]
    BudgetExceeded { requested: u128, budget: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("target field is not a subfield in the extension chain")]
    NotASubfield,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("modulus is not irreducible over the prime field")]
    NotIrreducible,
    #[error("{value} is not coprime to {modulus}")]
    NotCoprime { value: u64, modulus: u64 },
    #[error("root-of-unity orders differ ({left} vs {right})")]
    OrderMismatch { left: u32, right: u32 },
    #[error("coefficient ring cannot divide by {divisor}")]
    RingLacksDivision { divisor: i64 },
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("root finder did not converge after {iterations} iterations")]
    RootFindingDiverged { iterations: usize },
    #[error("parameter {0} must be nonzero")]
    ZeroParameter(&'static str),
    #[error("characteristic {found} not supported here (expected {expected})")]
    WrongCharacteristic { found: u32, expected: u32 },
    #[error("sequence profiles are over different fields or exponents")]
    ProfileMismatch,
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
