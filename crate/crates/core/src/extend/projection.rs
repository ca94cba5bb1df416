use num_traits::One;

use super::operator::{extend_operator, ExtensionProblem, ExtensionResult};
use crate::error::{check_dim, Error, Result};
use crate::geometry::{PartialOperator, PolyAsymNorm, Subspace};
use crate::ratlp::{Matrix, Rat, RatVec};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormOneProjection {
    /// the extension problem for the identity of `Y` with bound one
    pub problem: ExtensionProblem,
    pub result: ExtensionResult,
    /// `n × n` matrix of the projection onto `Y`, when one exists
    pub projection: Option<Matrix>,
}

/// Looks for a linear projection of `(ℝ^n, p)` onto `Y` with norm one, by
/// extending the identity of `Y` (with the restricted norm) to all of `ℝ^n`.
pub fn norm_one_projection(p: &PolyAsymNorm, y: &Subspace) -> Result<NormOneProjection> {
    check_dim(p.dim(), y.ambient_dim())?;
    if y.dim() == 0 {
        return Err(Error::InvalidInput("projection onto the zero subspace".into()));
    }
    let basis = y.basis_matrix();
    let inherited = p.pullback(&basis)?;
    let k = y.dim();
    let images = (0..k).map(|i| RatVec::unit(k, i)).collect();
    let identity = PartialOperator::new(y.clone(), images, p.clone(), inherited)?;
    let problem = ExtensionProblem::with_bound(identity, Rat::one())?;
    let result = extend_operator(&problem)?;
    let projection = result.matrix().map(|s| {
        let proj = basis.mul(s);
        assert_eq!(proj.mul(&proj), proj, "projection is not idempotent");
        for b in y.basis() {
            assert_eq!(&proj.apply(b), b, "projection moves a point of its range");
        }
        proj
    });
    Ok(NormOneProjection { problem, result, projection })
}
