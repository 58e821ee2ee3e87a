use thiserror::Error;

/// Every failure mode surfaced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("zero binary form")]
    ZeroForm,
    #[error("singular matrix")]
    SingularMatrix,
    #[error("zero ideal")]
    ZeroIdeal,
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("duplicate prime in CRT constraints")]
    DuplicatePrime,
    #[error("no field found within the search bound")]
    NotFound,
    #[error("generic fiber is singular (discriminant vanishes)")]
    SingularGenericFiber,
    #[error("degree violation: {0}")]
    DegreeViolation(String),
    #[error("twist parameter must be nonzero")]
    ZeroTwist,
    #[error("4P+Q^2 vanishes at zero or infinity")]
    RamifiedAtZeroOrInfinity,
    #[error("coefficients are not integral at the prime")]
    NonIntegralInput,
    #[error("search budget exceeded after {0} nodes")]
    SearchBudgetExceeded(usize),
    #[error("inconsistent pointed data: {0}")]
    InconsistentPointedData(String),
    #[error("Z is not isomorphic to P^1: [a] is not a square in the class group")]
    ObstructionNonSquareBundle,
    #[error("the Weierstrass class is nontrivial")]
    ObstructionWClass,
    #[error("integer factorization failed for {0}")]
    FactorizationFailed(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
