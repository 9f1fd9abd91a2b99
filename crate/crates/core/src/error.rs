use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("modulus {0} is not an odd prime below 2^31")]
    InvalidModulus(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("elements from different fields GF({left}) and GF({right})")]
    Mismatch { left: u32, right: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("operands live in different polynomial rings")]
    RingMismatch,
    #[error("monomial length {got} does not match ring with {expected} variables")]
    LengthMismatch { expected: usize, got: usize },
    #[error("zero polynomial has no leading term")]
    ZeroPolynomial,
    #[error("exponent overflow (cap {cap})")]
    ExponentOverflow { cap: u32 },
    #[error("cannot saturate by the zero polynomial")]
    ZeroSaturator,
    #[error("empty variety has no dimension")]
    EmptyVariety,
    #[error("ideal is positive-dimensional (dimension {0})")]
    PositiveDimensional(usize),
    #[error("cannot properly intersect a zero-dimensional cell")]
    ZeroDimensionalCut,
    #[error("no generic witness subspace found in {0} draws")]
    NoGenericSubspace(usize),
    #[error("cost guard exceeded: {0}")]
    CostGuard(String),
    #[error("expected a squarefree monomial, got {0}")]
    NotSquarefreeMonomial(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
