//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("element id {0} out of range for a poset on {1} elements")]
    ElementOutOfRange(usize, usize),
    #[error("cover relation contains a directed cycle")]
    CycleDetected,
    #[error("cover ({0}, {1}) is implied by a longer path; covers must form a transitive reduction")]
    NotTransitivelyReduced(usize, usize),
    #[error("expected exactly one minimal element, found {0}")]
    NoUniqueMinimum(usize),
    #[error("cover ({0}, {1}) skips a rank ({2} -> {3})")]
    NotGraded(usize, usize, usize, usize),
    #[error("elements {0} and {1} are not comparable")]
    NotComparable(usize, usize),
    #[error("poset has no unique maximum element")]
    NoUniqueMaximum,
    #[error("maximal elements do not all sit at the top rank")]
    RankMismatch,
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),
    #[error("edge ({0}, {1}) carries no label")]
    MissingLabel(usize, usize),
    #[error("rank two switching violated: {0}")]
    SwitchingViolation(String),
    #[error("not a Whitney labeling: {0}")]
    NotWhitneyLabeling(String),
    #[error("not a CW-labeling: {0}")]
    NotCw(String),
    #[error("lattice is not geometric: {0}")]
    NotGeometric(String),
    #[error("word is not weakly decreasing")]
    NotDecreasing,
    #[error("label sets cross")]
    CrossingLabelSets,
    #[error("label sets are not disjoint")]
    NonDisjoint,
    #[error("invalid label order: {0}")]
    InvalidLabelOrder(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
