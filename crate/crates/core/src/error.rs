//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("not prime: {0}")]
    NotPrime(u64),
    #[error("extension degree {0} out of range (1..=8)")]
    DegreeOutOfRange(usize),
    #[error("field mismatch")]
    FieldMismatch,
    #[error("zero has no inverse")]
    ZeroInverse,
    #[error("zero has no order")]
    ZeroOrder,
    #[error("order unavailable: {m} does not divide {group_order}")]
    OrderUnavailable { m: u64, group_order: u64 },
    #[error("plane too large: order {0} exceeds 32")]
    PlaneTooLarge(u64),
    #[error("points coincide")]
    PointsCoincide,
    #[error("homogeneous triple must be nonzero")]
    ZeroTriple,
    #[error("bad triple: {0}")]
    BadTriple(String),
    #[error("no such element: {0}")]
    NoSuchElement(String),
    #[error("restriction below rank: need at least 3 elements, got {0}")]
    RestrictionBelowRank(usize),
    #[error("invalid matroid: {0}")]
    InvalidMatroid(String),
    #[error("n too small: {0} < 2")]
    NTooSmall(usize),
    #[error("sigma not a derangement: fixed point at {0}")]
    NotDerangement(usize),
    #[error("tau requires an involution: cycle of length {0} found")]
    NotInvolution(usize),
    #[error("need two distinct group elements")]
    EqualGroupElements,
    #[error("invalid permutation: {0}")]
    BadPermutation(String),
    #[error("invalid group element: {0}")]
    BadGroupElement(String),
    #[error("invalid group: {0}")]
    BadGroup(String),
    #[error("degenerate arrangement: {0}")]
    DegenerateArrangement(String),
    #[error("beyond desk scale: {0} elements exceed 14")]
    BeyondDeskScale(usize),
    #[error("non-injective map: {0}")]
    NonInjective(String),
    #[error("subgroup does not exist: {m} does not divide {q} - 1")]
    NoSuchSubgroup { m: u64, q: u64 },
    #[error("Mac Lane needs p >= 3, got {0}")]
    PrimeTooSmall(u64),
    #[error("plane order must be at least 2, got {0}")]
    PlaneOrderTooSmall(u64),
    #[error(
        "tolerance order violated: zero tolerance {tol_zero} >= nonzero tolerance {tol_nonzero}"
    )]
    ToleranceOrder { tol_zero: f64, tol_nonzero: f64 },
    #[error("n out of range: {0}")]
    NOutOfRange(usize),
    #[error("io error: {0}")]
    Io(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
