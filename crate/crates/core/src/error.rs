use thiserror::Error;

use crate::picard::ChainStep;

/// Coordinate bound applied to user-supplied lattice points.
pub const COORDINATE_LIMIT: i64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty input: at least one lattice point is required")]
    EmptyInput,

    #[error("coordinate ({x}, {y}) exceeds the supported bound of {COORDINATE_LIMIT}")]
    CoordinateOutOfRange { x: i64, y: i64 },

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("matrix [[{a}, {b}], [{c}, {d}]] is not unimodular")]
    NotUnimodular { a: i64, b: i64, c: i64, d: i64 },

    #[error("invalid shoe parameters ({l}, {m}, {n}): need nonnegative values, not all zero")]
    InvalidShoeParameters { l: i64, m: i64, n: i64 },

    #[error("viewangle (0, 0) is not a direction")]
    ZeroDirection,

    #[error("polygon has no interior lattice points, so its adjoint is undefined")]
    NoAdjoint,

    #[error("polygon of dimension {dim} has width 0 and infinitely many optimal viewangles")]
    DegeneratePolygon { dim: u8 },

    #[error("invariant violated: {0}")]
    InvariantViolated(String),

    #[error("exponent ({a}, {b}) appears more than once in the embedding")]
    DuplicateExponent { a: i64, b: i64 },

    #[error("exponents span an affine space of dimension {dim} < 2")]
    DegenerateEmbedding { dim: u8 },

    #[error("direction ({m}, {n}) is not primitive")]
    NonPrimitiveDirection { m: i64, n: i64 },

    #[error("exponents do not generate the affine lattice; no integral fibration for ({m}, {n})")]
    NoIntegralFibration { m: i64, n: i64 },

    #[error("fiber samples must be nonzero")]
    ZeroSample,

    #[error("fiber scales k and l must be nonzero")]
    ZeroScale,

    #[error("classes live on different bases ({left} vs {right} exceptional classes)")]
    BasisMismatch { left: usize, right: usize },

    #[error("parametric degree must be positive, got {0}")]
    InvalidDegree(i64),

    #[error("not a minimally polarized surface: {0}")]
    NotMprs(String),

    #[error("model is already minimal")]
    AlreadyMinimal,

    #[error("(-1)-class {class} is orthogonal to D+K but is not a basis class; a Cremona change of basis would be needed")]
    NonBasisContractionNeeded { class: String },

    #[error("minimality undecidable from the class lattice: {0}")]
    MinimalityUndecidable(String),

    #[error("minimal model matches no recognized row: {0}")]
    UnrecognizedMinimalModel(String),

    #[error("adjoint chain aborted after {} step(s): {source}", partial.len())]
    ChainAborted {
        partial: Vec<ChainStep>,
        source: Box<Error>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
