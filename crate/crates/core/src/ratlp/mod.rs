//! Exact rational linear algebra and linear programming.

mod hull;
mod linalg;
mod polyhedron;
mod rat;
mod simplex;

pub use hull::{hull_membership, hull_program, HullMembership};
pub use linalg::{nullspace, rank, rref, solve as solve_linear, Matrix};
pub use polyhedron::{hull_facets, vertices};
pub use rat::{int, parse_rat, positive_part, rat, to_decimal, ParseRatError, Rat, RatVec};
pub use simplex::{solve, CertifiedEmpty, Constraint, Equality, FarkasCertificate, LinearProgram, LpOutcome, Sense};
