use thiserror::Error;

use crate::ratlp::Rat;

/// Errors raised by the geometric and extension machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("empty generator list")]
    NoGenerators,

    #[error("norm can be negative: the zero functional is not in the generator hull")]
    NormCanBeNegative,

    #[error("generators span a space of dimension {rank} < {dim}; p(x) = p(-x) = 0 has nonzero solutions")]
    RankDeficient { rank: usize, dim: usize },

    #[error("basis vectors are linearly dependent")]
    DependentBasis,

    #[error("negative radius {0}")]
    NegativeRadius(Rat),

    #[error("radii must be strictly positive (entry {index})")]
    NonPositiveRadius { index: usize },

    #[error("radii sum to zero with distinct centers")]
    DegenerateRadius,

    #[error("no metric-convexity witness: q(y - x) = {distance} exceeds r + s = {budget}")]
    NoWitness { distance: Box<Rat>, budget: Box<Rat> },

    #[error("family is not a symmetric-ball family: forward and backward radii differ at entry {index}")]
    ShapeMismatch { index: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("minimal-pair iteration did not reach a fixed point within {passes} passes")]
    ConvergenceFailure { passes: usize },

    #[error("unsupported norm: {0}")]
    UnsupportedNorm(String),

    #[error("unsupported target: {0}")]
    UnsupportedTarget(String),

    #[error("functional is not dominated by the norm on its domain")]
    NotDominated,

    #[error("extension direction lies in the domain subspace")]
    DegenerateDirection,

    #[error("point {0} is not in the image of the operator")]
    EmptyFiber(String),

    #[error("operator is not continuous (operator norm is unbounded)")]
    Discontinuous,

    #[error("pair violates condition ({condition}) at {sample}")]
    InvalidPair { condition: String, sample: String },

    #[error("necessity pipeline refused: {0}")]
    PipelineRefused(String),

    #[error("family admits a valid pair through {0}; not a usable witness")]
    UnusableWitness(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
