//! Finite-dimensional asymmetric normed spaces with polyhedral norms.
//!
//! Every norm here is the maximum of finitely many linear functionals, so
//! ball intersections, operator norms and norm-preserving extensions all
//! reduce to exact linear programs over the rationals. Negative answers come
//! with Farkas certificates that can be re-checked independently.

pub mod bip;
pub mod error;
pub mod extend;
pub mod geometry;
pub mod ratlp;
pub mod sample;

pub use error::{Error, Result};
