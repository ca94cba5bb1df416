//! Polyhedral asymmetric norms, their balls, subspaces and linear operators.

mod ball;
mod norm;
mod operator;
mod subspace;

pub use ball::{pair_intersection_witness, Ball, Orientation};
pub use norm::PolyAsymNorm;
pub use operator::{embed_into_ellinfty, represent_operator_by_functionals, OperatorNorm, PartialOperator};
pub use subspace::Subspace;
