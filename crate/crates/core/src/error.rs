use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular over GF(2)")]
    SingularMatrix,
    #[error("matrix is not invertible over Z4")]
    NotInvertible,
    #[error("polynomial {0} is not primitive")]
    NotPrimitive(String),
    #[error("matrix is not in L: {0}")]
    NotInL(String),
    #[error("matrix is not in π(L): {0}")]
    NotInPiL(String),
    #[error("matrix is not a permutation automorphism: {0}")]
    NotInPAut(String),
    #[error("not an automorphism: {0}")]
    NotAutomorphism(String),
    #[error("permutation does not preserve the quaternary code: {0}")]
    NotQuaternaryAutomorphism(String),
    #[error("brute-force budget exceeded: C(n, s) = {required} > budget {budget}")]
    BudgetExceeded { required: u128, budget: u128 },
    #[error("inconsistent bound: {0}")]
    InconsistentBound(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("parse error: {0}")]
    Parse(String),
}
