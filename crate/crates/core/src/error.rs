use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid Lie type {family}{rank}")]
    InvalidType { family: char, rank: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("simple reflection index {index} out of range 1..={rank}")]
    IndexOutOfRange { index: usize, rank: usize },

    #[error("Weyl group of order {order} exceeds the enumeration budget {budget}")]
    WeylBudgetExceeded { order: u64, budget: u64 },

    #[error("1 - w is singular on the root span")]
    Singular,

    #[error("vector is not in the span of the roots")]
    NotInRootSpan,

    #[error("weight is not dominant")]
    NotDominant,

    #[error("sublattice is not contained in the lattice")]
    NotSublattice,

    #[error("element is not in the center of the simply connected group")]
    NotCentral,

    #[error("no Weyl element found for the center element (inconsistent root data)")]
    NoWeylElement,

    #[error("level {k} is not a multiple of the basic level {k0}")]
    LevelNotAdmissible { k: i64, k0: i64 },

    #[error("center element has no fixed point on the level {k} weights")]
    NoFixedPoint { k: i64 },

    #[error("phase depends on the choice of lattice representatives")]
    RepresentativeDependence,

    #[error("evaluation point is singular (Weyl denominator vanishes)")]
    SingularPoint,

    #[error("value {value} is not within {tolerance:e} of an integer (residual {residual:e})")]
    Residual {
        value: f64,
        residual: f64,
        tolerance: f64,
    },

    #[error("negative value {0} where a multiplicity was expected")]
    Negative(i64),

    #[error("{0}")]
    Precondition(String),

    #[error("no closed form is known for this case")]
    NoClosedForm,

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
