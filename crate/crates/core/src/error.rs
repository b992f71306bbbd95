use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("linear system has no solution")]
    NoSolution,
    #[error("linear system is rank deficient ({rank} < {unknowns}); solution not unique")]
    NonUnique { rank: usize, unknowns: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("series order mismatch: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("series is not a unit (zero constant term)")]
    NotAUnit,
    #[error("coordinate v{index} has t-adic order {found}, expected {index}")]
    OrderCollapse { index: usize, found: usize },
    #[error("variable x{0} is out of range for this coordinate system")]
    VariableOutOfRange(usize),

    #[error("zero polynomial has no leading term")]
    ZeroPolynomial,

    #[error("invalid spider type: {0}")]
    InvalidSpider(String),
    #[error("invalid a-values: {0}")]
    InvalidAValues(String),
    #[error("basis is degenerate: rank {rank} < {expected}")]
    BasisDegenerate { rank: usize, expected: usize },
    #[error("derived relation with border {border} does not vanish")]
    RelationNonzero { border: String },
    #[error("no feasible consecutive weight vector with w <= {bound}")]
    NoFeasibleWeights { bound: u64 },
    #[error("invalid weight vector: {0}")]
    InvalidWeights(String),
    #[error("two monomials share the maximal weight {weight}")]
    TiedLeadingWeight { weight: u64 },
    #[error(
        "tail monomial {tail} (weight {tail_weight}) outweighs border (weight {border_weight})"
    )]
    BorderNotHeaviest {
        tail: String,
        tail_weight: u64,
        border_weight: u64,
    },

    #[error("fiber at lambda = {0} is not finite-dimensional")]
    InfiniteDimensional(String),
    #[error("lambda must be nonzero for this check")]
    ZeroLambda,

    #[error("unknown script dialect `{0}`")]
    UnknownDialect(String),
    #[error("descriptor error: {0}")]
    Descriptor(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Process exit status for this error: 1 verification failure, 2 usage or
    /// parse error, 3 internal invariant violation.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidSpider(_)
            | Error::InvalidAValues(_)
            | Error::InvalidWeights(_)
            | Error::UnknownDialect(_)
            | Error::Descriptor(_)
            | Error::Parse(_)
            | Error::ZeroLambda => 2,
            Error::NoFeasibleWeights { .. }
            | Error::InfiniteDimensional(_)
            | Error::TiedLeadingWeight { .. }
            | Error::BorderNotHeaviest { .. } => 1,
            _ => 3,
        }
    }
}
