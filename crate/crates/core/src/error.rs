use thiserror::Error;

use crate::universe::MAX_POINTS;

/// Errors raised while building or querying finite spaces and maps.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NanoError {
    #[error("universe must contain at least one point")]
    EmptyUniverse,
    #[error("point labels must be nonempty")]
    EmptyLabel,
    #[error("duplicate point label `{0}`")]
    DuplicateLabel(String),
    #[error("universe has {count} points, the cap is {}", MAX_POINTS)]
    TooManyPoints { count: usize },
    #[error("unknown point label `{0}`")]
    UnknownLabel(String),
    #[error("bit pattern {bits:#x} has members outside a universe of {size} points")]
    BitsOutOfRange { bits: u32, size: usize },
    #[error("operands live in different universes")]
    UniverseMismatch,

    #[error("partition block {index} is empty")]
    EmptyBlock { index: usize },
    #[error("point `{0}` appears in more than one partition block")]
    OverlappingBlocks(String),
    #[error("point `{0}` is not covered by any partition block")]
    UncoveredPoint(String),

    #[error("open-set family is missing the empty set")]
    MissingEmptySet,
    #[error("open-set family is missing the full universe")]
    MissingFullSet,
    #[error("union of {left} and {right} is not in the family")]
    NotClosedUnderUnion { left: String, right: String },
    #[error("intersection of {left} and {right} is not in the family")]
    NotClosedUnderIntersection { left: String, right: String },

    #[error("point `{0}` has no image")]
    UnmappedPoint(String),
    #[error("point `{0}` is mapped more than once")]
    DuplicateArrow(String),
    #[error("maps cannot be composed: the first codomain differs from the second domain")]
    NotComposable,

    #[error("no bijection between universes of {domain} and {codomain} points")]
    NoBijection { domain: usize, codomain: usize },
    #[error("invalid instance bounds: {0}")]
    InvalidBounds(String),
}

pub type Result<T, E = NanoError> = std::result::Result<T, E>;
