use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero vector has no primitive direction")]
    ZeroVector,
    #[error("rays not full rank")]
    RaysNotFullRank,
    #[error("polytope unbounded")]
    Unbounded,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("inequality with zero normal")]
    ZeroNormal,
    #[error("point is not a vertex of the polytope")]
    NotAVertex,
    #[error("image H-rep requires injective chart map")]
    NonInjectiveMap,
    #[error("polytope is empty")]
    EmptyPolytope,
    #[error("restrict to affine hull first")]
    NotFullDimensional,
    #[error("need at least 4 sides")]
    TooFewSides,
    #[error("invalid side data: {0}")]
    InvalidSideData(String),
    #[error("lambda must be weakly decreasing")]
    NonMonotoneLambda,
    #[error("invalid row sums: {0}")]
    InvalidRowSums(String),
    #[error("dual weight nonpositive")]
    DualWeightNonpositive,
    #[error("multiplicity defined for integral dilations only")]
    NonIntegralMultiplicity,
    #[error("insufficient samples: need {needed} dilates, have {available}")]
    InsufficientSamples { needed: usize, available: usize },
    #[error("counts not (quasi-)polynomial at this period")]
    FitMismatch,
    #[error("facet outside the diagonal-length facet catalogue: {0}")]
    UnclassifiedFacet(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
