use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("polynomial is not monic: leading coefficient {0}")]
    NotMonic(String),

    #[error("degree {0} base rejected: the base must be an irrational algebraic number (degree >= 2)")]
    RationalBase(usize),

    #[error("polynomial has no real root greater than 1 in the requested region")]
    NoRootAboveOne,

    #[error("root hint ({lo}, {hi}] contains {count} roots, expected exactly one")]
    HintNotIsolating { lo: String, hi: String, count: usize },

    #[error("polynomial is reducible over the integers; factors: {factors}")]
    Reducible { factors: String },

    #[error("factorization search exceeded {0} candidate factors")]
    FactorizationLimit(usize),

    #[error("division by zero")]
    DivisionByZero,

    #[error("operands belong to different base contexts")]
    ContextMismatch,

    #[error("value {0} lies outside the interval [-b/(b+1), 1/(b+1))")]
    OutsideInterval(String),

    #[error("no period found within a budget of {0} orbit states")]
    BudgetExhausted(usize),

    #[error("left endpoint expansion is not eventually periodic within {0} steps (base is not Yrrap)")]
    NotYrrap(usize),

    #[error("digit {digit} outside alphabet 0..={max}")]
    DigitOutOfAlphabet { digit: u32, max: u32 },

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("operation requires a quadratic base of the {expected} family")]
    FamilyMismatch { expected: String },

    #[error("element is not in Z[b]: {0}")]
    NonIntegral(String),

    #[error("base is not an algebraic unit (constant coefficient {0})")]
    NonUnit(String),

    #[error("sequence undecided after {0} terms")]
    Undecided(usize),

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}
