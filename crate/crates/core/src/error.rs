use thiserror::Error;

use crate::specialize::AdmissibilityCheck;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("arity mismatch: expected {expected} values, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("polynomial must be non-constant")]
    ConstantPolynomial,

    #[error("polynomial must be monic")]
    NotMonic,

    #[error("polynomial degree {0} is odd; an even degree >= 2 is required")]
    OddDegree(usize),

    #[error("characteristic 2 is not supported")]
    CharacteristicTwo,

    #[error("factor {index} of the algebra is not separable")]
    InseparableFactor { index: usize },

    #[error("an etale algebra needs at least one factor")]
    EmptyAlgebra,

    #[error("elements belong to different algebras")]
    ParentMismatch,

    #[error("delta is not a unit (component {index} shares a factor with the modulus)")]
    NotAUnit { index: usize },

    #[error("algebra degree {have} exceeds the construction degree {limit}")]
    DegreeOverflow { have: usize, limit: usize },

    #[error("invalid construction parameters: {0}")]
    InvalidParameters(String),

    #[error("symbolic computation for n = {n} exceeds the configured cap {cap}")]
    CapacityExceeded { n: usize, cap: usize },

    #[error("inadmissible specialization: {check} failed")]
    Inadmissible { check: AdmissibilityCheck },

    #[error("found only {found} admissible specializations out of {wanted} within {attempts} attempts")]
    SamplingExhausted { wanted: usize, found: usize, attempts: usize },

    #[error("no rational point available for the Weierstrass transformation")]
    NoRationalPoint,

    #[error("curve is not of genus one (degree {0} model)")]
    NotGenusOne(usize),

    #[error("bad reduction at p = {0}")]
    BadReduction(u64),

    #[error("polynomial is not separable modulo {0}")]
    InseparableModP(u64),

    #[error("no prime splitting the marked divisor found within the budget")]
    NoSplitPrime,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("permutation error: {0}")]
    Permutation(String),

    #[error("not a subgroup: {0}")]
    NotASubgroup(String),

    #[error("group order {order} exceeds the cap {cap}")]
    GroupTooLarge { order: usize, cap: usize },

    #[error("pattern mismatch: {0}")]
    PatternMismatch(String),
}
