//! Norm-preserving extension of functionals and operators, norm-one
//! projections, and the certificate pipeline for non-injective spaces.

mod functional;
mod necessity;
mod operator;
mod projection;
mod sufficiency;

pub use functional::{extend_functional_fully, extend_functional_one_step, OneStepExtension};
pub use necessity::{necessity_pipeline, NecessityReport};
pub use operator::{
    extend_coordinatewise, extend_operator, extension_program, verify_extension, ExtensionProblem, ExtensionResult,
};
pub use projection::{norm_one_projection, NormOneProjection};
pub use sufficiency::{fiber_distances, one_step_operator_extension, FiberDistances, OneStepOperator};
