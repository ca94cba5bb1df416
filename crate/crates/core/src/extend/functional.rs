use num_traits::{One, Zero};

use crate::error::{check_dim, Error, Result};
use crate::geometry::{PolyAsymNorm, Subspace};
use crate::ratlp::{hull_membership, LinearProgram, LpOutcome, Matrix, Rat, RatVec};

/// Result of extending a functional from `Z` to `Z ⊕ ℝ x0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneStepExtension {
    /// `max_{z ∈ Z} (φ(z) - p(z - x0))`
    pub lower: Rat,
    /// `min_{z ∈ Z} (p(z + x0) - φ(z))`
    pub upper: Rat,
    /// the value given to `x0`; always `lower`
    pub chosen: Rat,
    /// `Z ⊕ ℝ x0` with basis `(basis of Z, x0)`
    pub domain: Subspace,
    /// the extended functional's values on that basis
    pub values: Vec<Rat>,
}

/// Maximizes `objective·c - s`, or minimizes `objective·c + s`, over `(c, s)`
/// with `s ≥ p(B c + shift)`.
fn norm_epigraph_program(p: &PolyAsymNorm, basis: &Matrix, shift: &RatVec, objective: &[Rat], maximize: bool) -> LinearProgram {
    let k = basis.ncols();
    let mut obj: Vec<Rat> = objective.to_vec();
    obj.push(if maximize { -Rat::one() } else { Rat::one() });
    let mut lp = if maximize {
        LinearProgram::maximize(RatVec::new(obj))
    } else {
        LinearProgram::minimize(RatVec::new(obj))
    };
    for a in p.generators() {
        // a·(Bc + shift) ≤ s
        let row = basis.apply_transpose(a).extended(&[-Rat::one()]);
        debug_assert_eq!(row.dim(), k + 1);
        lp.push_le(row, -a.dot(shift));
    }
    lp
}

fn check_functional(p: &PolyAsymNorm, z: &Subspace, phi: &[Rat]) -> Result<()> {
    check_dim(p.dim(), z.ambient_dim())?;
    check_dim(z.dim(), phi.len())?;
    if z.dim() == 0 {
        return Ok(());
    }
    let basis = z.basis_matrix();
    let lp = norm_epigraph_program(p, &basis, &RatVec::zeros(p.dim()), phi, true);
    match lp.solve()? {
        LpOutcome::Optimal { value, .. } if value.is_zero() => Ok(()),
        LpOutcome::Optimal { .. } => unreachable!("a sublinear gap is either zero or unbounded"),
        LpOutcome::Unbounded { .. } => Err(Error::NotDominated),
        LpOutcome::Infeasible { .. } => unreachable!("the origin is feasible"),
    }
}

/// Extends `φ ≤ p` from `Z` to `Z ⊕ ℝ x0` keeping `ψ ≤ p`. `phi` holds the
/// values of `φ` on the basis of `Z`.
pub fn extend_functional_one_step(p: &PolyAsymNorm, z: &Subspace, phi: &[Rat], x0: &RatVec) -> Result<OneStepExtension> {
    check_dim(p.dim(), x0.dim())?;
    check_functional(p, z, phi)?;
    if z.contains(x0)? {
        return Err(Error::DegenerateDirection);
    }
    let basis = z.basis_matrix();
    let lower_lp = norm_epigraph_program(p, &basis, &-x0, phi, true);
    let negated: Vec<Rat> = phi.iter().map(|v| -v.clone()).collect();
    let upper_lp = norm_epigraph_program(p, &basis, x0, &negated, false);
    let lower = lower_lp.solve()?.value().cloned().expect("lower end is finite under domination");
    let upper = upper_lp.solve()?.value().cloned().expect("upper end is finite under domination");
    assert!(lower <= upper, "extension interval is empty");
    let domain = z.extended_by(x0)?;
    let mut values = phi.to_vec();
    values.push(lower.clone());
    Ok(OneStepExtension { chosen: lower.clone(), lower, upper, domain, values })
}

/// Extends `φ ≤ p` from `Z` to all of `ℝ^n` by repeated one-step extension
/// along the unit vectors completing `Z`. Returns the functional as a vector.
pub fn extend_functional_fully(p: &PolyAsymNorm, z: &Subspace, phi: &[Rat]) -> Result<RatVec> {
    check_functional(p, z, phi)?;
    let mut domain = z.clone();
    let mut values = phi.to_vec();
    for e in z.complement_basis() {
        let step = extend_functional_one_step(p, &domain, &values, &e)?;
        domain = step.domain;
        values = step.values;
    }
    // solve Bᵀ ψ = values for the square basis matrix B
    let basis = domain.basis_matrix();
    let inverse = basis.inverse().expect("completed basis is invertible");
    let psi = inverse.apply_transpose(&RatVec::new(values));
    assert!(
        hull_membership(&psi, p.generators())?.is_inside(),
        "extended functional escapes the norm"
    );
    Ok(psi)
}
