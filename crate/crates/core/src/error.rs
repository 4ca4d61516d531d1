use thiserror::Error;

/// Errors raised by constructions and checks across the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("element count exceeded the cap of {cap}")]
    CapExceeded { cap: usize },
    #[error("permutation degrees differ: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("point {point} is out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("subgroups belong to different parent groups")]
    ParentMismatch,
    #[error("simplex {0:?} is not in the complex")]
    SimplexNotInComplex(Vec<usize>),
    #[error("vertex {0} is not in the complex")]
    UnknownVertex(usize),
    #[error("complex is not pure")]
    NotPure,
    #[error("complex is not a chamber complex")]
    NotChamberComplex,
    #[error("chambers {0} and {1} are not connected in the chamber graph")]
    UnreachableChamber(usize, usize),
    #[error("invalid coloring: {0}")]
    InvalidColoring(String),
    #[error("complex is disconnected")]
    Disconnected,
    #[error("the given sets do not cover the ambient set")]
    NotACover,
    #[error("action is not simplicial: {0}")]
    NotSimplicialAction(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("duplicate subgroup in family at positions {0} and {1}")]
    DuplicateSubgroup(usize, usize),
    #[error("not a full flag")]
    NotFullFlag,
    #[error("simplices have different dimensions ({0} vs {1})")]
    DimensionMismatch(usize, usize),
    #[error("unknown example `{0}`")]
    UnknownExample(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
