use thiserror::Error;

/// Errors raised by the library. Variants distinguish invalid input data
/// (user-correctable) from internal consistency failures.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vectors belong to different ambient spaces")]
    SpaceMismatch,
    #[error("vector is isotropic: {0}")]
    Isotropic(String),
    #[error("gram matrix is not symmetric positive semi-definite")]
    NotSemidefinite,
    #[error("invalid dimensions: {0}")]
    Dimension(String),
    #[error("invalid root system type {label} of rank {rank}")]
    InvalidType { label: String, rank: usize },
    #[error("empty input: {0}")]
    Empty(String),
    #[error("not a root: {0}")]
    NotARoot(String),
    #[error("ordering precondition violated: {0}")]
    Ordering(String),
    #[error("generalized Cartan matrix is not of affine type: {0}")]
    NotAffine(String),
    #[error("no matching affine diagram: {0}")]
    NoMatch(String),
    #[error("base property fails: {0}")]
    NotABase(String),
    #[error("invalid datum: {0}")]
    InvalidDatum(String),
    #[error("coset closure did not stabilize up to modulus {0}")]
    NoConvergence(i64),
    #[error("lattice point not in the root lattice: {0}")]
    NotInLattice(String),
    #[error("lifting failed: {0}")]
    LiftFailed(String),
    #[error("not an isomorphism: {0}")]
    NotIsomorphism(String),
    #[error("internal assertion failed: {0}")]
    Assertion(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True when the error reflects invalid user data rather than an
    /// internal inconsistency.
    pub fn is_invalid_input(&self) -> bool {
        !matches!(self, Error::Assertion(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
