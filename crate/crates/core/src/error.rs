use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("tree depth must be in 1..={max}, got {depth}")]
    InvalidDepth { depth: usize, max: usize },

    #[error("depth mismatch: {left} vs {right}")]
    DepthMismatch { left: usize, right: usize },

    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("level {level} out of range for depth {depth}")]
    LevelOutOfRange { level: usize, depth: usize },

    #[error("position {position} out of range for level {level}")]
    PositionOutOfRange { level: usize, position: usize },

    #[error("duplicate position {0}")]
    DuplicatePosition(usize),

    #[error("invalid position pair ({0}, {1})")]
    InvalidPair(usize, usize),

    #[error("not a permutation: {0}")]
    NotAPermutation(String),

    #[error("permutation of degree {0} is not a tree automorphism")]
    NotTreeAutomorphism(usize),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("operation requires {0}")]
    Precondition(String),

    #[error("enumeration cap {cap} exceeded ({partial} elements found so far)")]
    CapExceeded { cap: usize, partial: usize },

    #[error("group of order {0} is not a 2-group")]
    NotTwoGroup(usize),

    #[error("map is undefined on an element of the domain")]
    PartialMap,

    #[error("unknown label {0:?}")]
    UnknownLabel(String),

    #[error("cache: {0}")]
    Cache(String),
}

pub type Result<T> = std::result::Result<T, Error>;
