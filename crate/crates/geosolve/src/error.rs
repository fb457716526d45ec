use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("zero has no content")]
    ZeroContent,
    #[error("non-unit series")]
    NonUnitSeries,
    #[error("gcd of two zero polynomials is undefined")]
    GcdOfZeros,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SlpError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("arity mismatch: expected {expected} values, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("malformed program: {0}")]
    Malformed(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("companion matrix needs a monic polynomial of degree at least 1")]
    NotMonic,
    #[error("element not primitive")]
    NotPrimitive,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("fiber not smooth / bad lifting point at level {level}: {reason}")]
    BadLiftingPoint { level: usize, reason: String },
    #[error("primitive element failure at level {level}")]
    PrimitiveFailure { level: usize },
    #[error("empty fiber at level {level}: the system is inconsistent")]
    EmptyFiber { level: usize },
    #[error("not a regular sequence at level {level}")]
    NotRegular { level: usize },
    #[error("non-radical/non-smooth at level {level}")]
    NonSmooth { level: usize },
    #[error("coordinates not in Noether position at level {level}")]
    NotNoether { level: usize },
    #[error("could not find lifting point")]
    NoLiftingPoint,
    #[error("system has {equations} equations in {variables} variables")]
    Shape { equations: usize, variables: usize },
    #[error("resolution failed validation: {0}")]
    Validation(String),
}

impl SolveError {
    pub fn level(&self) -> Option<usize> {
        match self {
            SolveError::BadLiftingPoint { level, .. }
            | SolveError::PrimitiveFailure { level }
            | SolveError::EmptyFiber { level }
            | SolveError::NotRegular { level }
            | SolveError::NonSmooth { level }
            | SolveError::NotNoether { level } => Some(*level),
            _ => None,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DualityError {
    #[error("system not smooth: the jacobian is singular on the variety")]
    NotSmooth,
    #[error("f is a zero-divisor in the quotient algebra")]
    ZeroDivisor,
    #[error("f does not divide g in the quotient algebra")]
    NotDivisible,
    #[error("system is consistent: no witness exists")]
    Consistent,
    #[error("arity mismatch: {0}")]
    Shape(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LiouvilleError {
    #[error("approximation level must satisfy 0 < eps <= 1")]
    BadEpsilon,
    #[error("denominator q must be at least 1")]
    BadDenominator,
    #[error("witness missing: {0}")]
    Witness(String),
}
