use num_traits::{One, Zero};

use super::rat::{Rat, RatVec};
use super::simplex::{LinearProgram, LpOutcome};
use crate::error::{check_dim, Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HullMembership {
    /// Convex weights reproducing the point exactly.
    Inside { multipliers: Vec<Rat> },
    /// `separator · point > separator · g` for every generator `g`.
    Outside { separator: RatVec },
}

impl HullMembership {
    pub fn is_inside(&self) -> bool {
        matches!(self, HullMembership::Inside { .. })
    }
}

/// The program `λ ≥ 0, Σλ = 1, Σλ_i g_i = point` in the weights `λ`.
pub fn hull_program(point: &RatVec, generators: &[RatVec]) -> LinearProgram {
    let count = generators.len();
    let mut lp = LinearProgram::feasibility(count);
    for i in 0..count {
        lp.push_le(-&RatVec::unit(count, i), Rat::zero());
    }
    for axis in 0..point.dim() {
        let row = generators.iter().map(|g| g[axis].clone()).collect();
        lp.push_eq(row, point[axis].clone());
    }
    lp.push_eq(RatVec::new(vec![Rat::one(); count]), Rat::one());
    lp
}

pub fn hull_membership(point: &RatVec, generators: &[RatVec]) -> Result<HullMembership> {
    if generators.is_empty() {
        return Err(Error::NoGenerators);
    }
    for g in generators {
        check_dim(point.dim(), g.dim())?;
    }
    let lp = hull_program(point, generators);
    match lp.solve()? {
        LpOutcome::Optimal { point: weights, .. } => Ok(HullMembership::Inside {
            multipliers: weights.into_coords(),
        }),
        LpOutcome::Infeasible { certificate } => {
            // the coordinate rows' multipliers w satisfy w·g + ω ≥ 0 > w·point + ω
            let w = &certificate.equality_multipliers[..point.dim()];
            let separator: RatVec = w.iter().map(|c| -c.clone()).collect();
            debug_assert!(generators.iter().all(|g| separator.dot(g) < separator.dot(point)));
            Ok(HullMembership::Outside { separator })
        }
        LpOutcome::Unbounded { .. } => unreachable!("feasibility programs are never unbounded"),
    }
}
