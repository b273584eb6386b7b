use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NonPrime(u64),
    #[error("characteristic 2 is not supported")]
    EvenCharacteristic,
    #[error("modulus {0} is too large (must be below 2^31)")]
    ModulusTooLarge(u64),
    #[error("unsupported extension degree {0} (expected 1 or 2)")]
    UnsupportedDegree(u32),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("zero vector is not a projective point")]
    ZeroVector,
    #[error("scroll type has degree {0}; codimension at least 2 needs degree >= 3")]
    CodimTooSmall(u32),
    #[error("scroll type is empty")]
    EmptyType,
    #[error("invalid scroll type: {0}")]
    InvalidType(String),
    #[error("the point is a vertex point; its tangent space is not defined")]
    VertexPoint,
    #[error("the center of projection lies on the scroll")]
    POnVariety,
    #[error("unclassifiable secant signature (s = {s}, rank = {rank}): {reason}")]
    UnclassifiableSignature { s: i64, rank: usize, reason: String },
    #[error("work budget exceeded: {needed} > {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("the zero matrix is not a point of P^5")]
    ZeroMatrix,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("parse error: {0}")]
    Parse(String),
}
