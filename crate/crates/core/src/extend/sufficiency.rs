use num_traits::{One, Zero};

use super::functional::extend_functional_one_step;
use super::operator::ExtensionProblem;
use crate::error::{check_dim, Error, Result};
use crate::geometry::{represent_operator_by_functionals, OperatorNorm, PartialOperator};
use crate::ratlp::{LinearProgram, LpOutcome, Rat, RatVec};

/// Distances from `x0` to the fiber `{z ∈ Z : T z = u}`: `r = min p(z - x0)`
/// forward and `s = min p(x0 - z)` backward.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberDistances {
    pub r_value: Rat,
    pub s_value: Rat,
}

/// `min p(sign·(Bc - x0))` over domain coordinates `c` with `T c = u`.
fn fiber_program(prob: &ExtensionProblem, x0: &RatVec, u: &RatVec, forward: bool) -> LinearProgram {
    let t = prob.operator();
    let basis = t.domain().basis_matrix();
    let k = t.domain().dim();
    let mut objective = vec![Rat::zero(); k];
    objective.push(Rat::one());
    let mut lp = LinearProgram::minimize(RatVec::new(objective));
    let sign = if forward { Rat::one() } else { -Rat::one() };
    for a in prob.source().generators() {
        // sign·(a·Bc - a·x0) ≤ s
        let row = basis.apply_transpose(a).scale(&sign).extended(&[-Rat::one()]);
        lp.push_le(row, &sign * a.dot(x0));
    }
    for r in 0..prob.target().dim() {
        let mut row: Vec<Rat> = t.images().iter().map(|y| y[r].clone()).collect();
        row.push(Rat::zero());
        lp.push_eq(RatVec::new(row), u[r].clone());
    }
    lp
}

pub fn fiber_distances(prob: &ExtensionProblem, x0: &RatVec, u: &RatVec) -> Result<FiberDistances> {
    check_dim(prob.source().dim(), x0.dim())?;
    check_dim(prob.target().dim(), u.dim())?;
    let mut out = [Rat::zero(), Rat::zero()];
    for (slot, forward) in out.iter_mut().zip([true, false]) {
        match fiber_program(prob, x0, u, forward).solve()? {
            LpOutcome::Optimal { value, .. } => *slot = value,
            LpOutcome::Infeasible { .. } => return Err(Error::EmptyFiber(u.to_string())),
            LpOutcome::Unbounded { .. } => unreachable!("norms are bounded below"),
        }
    }
    let [r_value, s_value] = out;
    Ok(FiberDistances { r_value, s_value })
}

/// `S(z + t x0) = T z + t y0` on `Z ⊕ ℝ x0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneStepOperator {
    /// `None` when `T` is already defined everywhere
    pub y0: Option<RatVec>,
    /// the norm bound `β` the problem was normalized by
    pub scale: Rat,
    /// per-coordinate admissible intervals for `y0 / β`
    pub intervals: Vec<(Rat, Rat)>,
    pub operator: PartialOperator,
}

/// One step of the sufficiency construction for asymmetric-sup targets:
/// `y0` is assembled coordinate by coordinate from one-step functional
/// extensions of the normalized operator `T / β`, taking the lower end.
pub fn one_step_operator_extension(prob: &ExtensionProblem, x0: &RatVec) -> Result<OneStepOperator> {
    let t = prob.operator();
    check_dim(prob.source().dim(), x0.dim())?;
    let functionals = represent_operator_by_functionals(t)?;
    let beta = prob.bound().clone();
    if t.is_total() {
        return Ok(OneStepOperator { y0: None, scale: beta, intervals: Vec::new(), operator: t.clone() });
    }
    if t.domain().contains(x0)? {
        return Err(Error::DegenerateDirection);
    }
    let m = prob.target().dim();
    let (y0, intervals) = if beta.is_zero() {
        // the operator vanishes on Z, so y0 = 0 keeps the norm at zero
        (RatVec::zeros(m), vec![(Rat::zero(), Rat::zero()); m])
    } else {
        let inv = beta.recip();
        let mut coords = Vec::with_capacity(m);
        let mut intervals = Vec::with_capacity(m);
        for phi in &functionals {
            let values: Vec<Rat> = phi.images().iter().map(|y| &y[0] * &inv).collect();
            let step = extend_functional_one_step(prob.source(), t.domain(), &values, x0)?;
            coords.push(&step.chosen * &beta);
            intervals.push((step.lower, step.upper));
        }
        (RatVec::new(coords), intervals)
    };
    let domain = t.domain().extended_by(x0)?;
    let mut images = t.images().to_vec();
    images.push(y0.clone());
    let operator = PartialOperator::new(domain, images, prob.source().clone(), prob.target().clone())?;
    match operator.operator_norm() {
        OperatorNorm::Finite(norm) if norm <= beta => {}
        other => panic!("one-step extension has norm {other}, above {beta}"),
    }
    Ok(OneStepOperator { y0: Some(y0), scale: beta, intervals, operator })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{PolyAsymNorm, Subspace};
    use crate::ratlp::{int, Matrix};

    fn v(c: &[i64]) -> RatVec {
        RatVec::from_ints(c)
    }

    fn first_axis_problem() -> ExtensionProblem {
        let z = Subspace::new(2, vec![v(&[1, 0])]).unwrap();
        let t = PartialOperator::new(z, vec![v(&[1])], PolyAsymNorm::ell_infty(2), PolyAsymNorm::positive_part());
        ExtensionProblem::new(t.unwrap()).unwrap()
    }

    #[test]
    fn fiber_examples() {
        let prob = first_axis_problem();
        let d = fiber_distances(&prob, &v(&[0, 1]), &v(&[0])).unwrap();
        assert_eq!((d.r_value, d.s_value), (int(1), int(1)));
        let d = fiber_distances(&prob, &v(&[0, 1]), &v(&[5])).unwrap();
        assert_eq!((d.r_value, d.s_value), (int(5), int(5)));
    }

    #[test]
    fn empty_fiber() {
        let z = Subspace::new(2, vec![v(&[1, 0])]).unwrap();
        let t = PartialOperator::new(z, vec![v(&[1, 1])], PolyAsymNorm::ell_infty(2), PolyAsymNorm::asym_sup(2));
        let prob = ExtensionProblem::new(t.unwrap()).unwrap();
        assert!(matches!(fiber_distances(&prob, &v(&[0, 1]), &v(&[1, 2])), Err(Error::EmptyFiber(_))));
    }

    #[test]
    fn one_step_on_the_first_axis() {
        let prob = first_axis_problem();
        let step = one_step_operator_extension(&prob, &v(&[0, 1])).unwrap();
        assert_eq!(step.y0, Some(v(&[0])));
        assert_eq!(step.intervals, vec![(int(0), int(0))]);
        assert_eq!(step.operator.operator_norm(), OperatorNorm::Finite(int(1)));
    }

    #[test]
    fn total_operator_is_returned_unchanged() {
        let m = Matrix::from_rows(2, vec![v(&[1, 0]), v(&[1, 1])]);
        let t = PartialOperator::total(&m, PolyAsymNorm::ell_infty(2), PolyAsymNorm::asym_sup(2)).unwrap();
        let prob = ExtensionProblem::new(t.clone()).unwrap();
        let step = one_step_operator_extension(&prob, &v(&[1, 0])).unwrap();
        assert_eq!(step.y0, None);
        assert_eq!(step.operator, t);
    }

    #[test]
    fn sup_target_in_the_plane() {
        let z = Subspace::new(3, vec![v(&[1, 1, 0])]).unwrap();
        let t = PartialOperator::new(z, vec![v(&[2, -1])], PolyAsymNorm::ell_one(3), PolyAsymNorm::asym_sup(2)).unwrap();
        let prob = ExtensionProblem::new(t).unwrap();
        let step = one_step_operator_extension(&prob, &v(&[0, 0, 1])).unwrap();
        assert_eq!(step.operator.operator_norm(), OperatorNorm::Finite(prob.bound().clone()));
        let hexagon_target = PartialOperator::total(&Matrix::identity(2), PolyAsymNorm::ell_one(2), PolyAsymNorm::hexagon());
        let prob = ExtensionProblem::new(hexagon_target.unwrap()).unwrap();
        assert!(matches!(
            one_step_operator_extension(&prob, &v(&[1, 0])),
            Err(Error::UnsupportedTarget(_))
        ));
    }
}
