use num_traits::{One, Signed, Zero};

use super::minimal::FinitePairTable;
use crate::error::{check_dim, Error, Result};
use crate::geometry::PolyAsymNorm;
use crate::ratlp::{rat, LinearProgram, LpOutcome, Rat, RatVec};

/// `z ↦ slope·z + offset`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffinePiece {
    pub slope: RatVec,
    pub offset: Rat,
}

/// Which member of a pair an envelope reconstructs; decides the direction
/// in which the norm is measured from the anchors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Component {
    /// `min_λ [Σ λ·values + q(z - Σ λ·anchors)]`
    First,
    /// `min_λ [Σ λ·values + q(Σ λ·anchors - z)]`
    Second,
}

/// A nonnegative convex function on `ℝ^n` given by finite data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GaugeFunction {
    /// `max(0, max_j (slope_j·z + offset_j))`
    ClippedMaxAffine { dim: usize, pieces: Vec<AffinePiece> },
    /// Convex envelope of anchor values, spread by the norm; one LP per query.
    HullEnvelope {
        norm: PolyAsymNorm,
        anchors: Vec<RatVec>,
        values: Vec<Rat>,
        component: Component,
    },
}

impl GaugeFunction {
    pub fn clipped_max_affine(dim: usize, pieces: Vec<AffinePiece>) -> Result<Self> {
        for p in &pieces {
            check_dim(dim, p.slope.dim())?;
        }
        Ok(GaugeFunction::ClippedMaxAffine { dim, pieces })
    }

    /// `z ↦ p(z) + offset` for a polyhedral norm and `offset ≥ 0`.
    pub fn norm_plus(norm: &PolyAsymNorm, offset: &Rat) -> Result<Self> {
        if offset.is_negative() {
            return Err(Error::InvalidInput("offset must be nonnegative".into()));
        }
        let pieces = norm
            .generators()
            .iter()
            .map(|a| AffinePiece { slope: a.clone(), offset: offset.clone() })
            .collect();
        Self::clipped_max_affine(norm.dim(), pieces)
    }

    pub fn hull_envelope(norm: PolyAsymNorm, anchors: Vec<RatVec>, values: Vec<Rat>, component: Component) -> Result<Self> {
        if anchors.is_empty() {
            return Err(Error::InvalidInput("envelope needs at least one anchor".into()));
        }
        check_dim(anchors.len(), values.len())?;
        for a in &anchors {
            check_dim(norm.dim(), a.dim())?;
        }
        Ok(GaugeFunction::HullEnvelope { norm, anchors, values, component })
    }

    pub fn dim(&self) -> usize {
        match self {
            GaugeFunction::ClippedMaxAffine { dim, .. } => *dim,
            GaugeFunction::HullEnvelope { norm, .. } => norm.dim(),
        }
    }

    pub fn eval(&self, z: &RatVec) -> Result<Rat> {
        check_dim(self.dim(), z.dim())?;
        Ok(match self {
            GaugeFunction::ClippedMaxAffine { pieces, .. } => pieces
                .iter()
                .map(|p| p.slope.dot(z) + &p.offset)
                .fold(Rat::zero(), Rat::max),
            GaugeFunction::HullEnvelope { norm, anchors, values, component } => {
                envelope_value(norm, anchors, values, *component, z)
            }
        })
    }
}

fn envelope_value(norm: &PolyAsymNorm, anchors: &[RatVec], values: &[Rat], component: Component, z: &RatVec) -> Rat {
    // variables: weights λ_1..λ_k, then the epigraph variable t
    let k = anchors.len();
    let mut objective = values.to_vec();
    objective.push(Rat::one());
    let mut lp = LinearProgram::minimize(RatVec::new(objective));
    for i in 0..k {
        lp.push_le(-&RatVec::unit(k + 1, i), Rat::zero());
    }
    let mut simplex_row = vec![Rat::one(); k];
    simplex_row.push(Rat::zero());
    lp.push_eq(RatVec::new(simplex_row), Rat::one());
    for a in norm.generators() {
        let pairing: Vec<Rat> = anchors.iter().map(|x| a.dot(x)).collect();
        let az = a.dot(z);
        let (row, bound): (Vec<Rat>, Rat) = match component {
            // a·z - Σλ a·x ≤ t
            Component::First => (pairing.iter().map(|c| -c.clone()).collect(), -az),
            // Σλ a·x - a·z ≤ t
            Component::Second => (pairing, az),
        };
        let mut row = row;
        row.push(-Rat::one());
        lp.push_le(RatVec::new(row), bound);
    }
    match lp.solve().expect("well-formed program") {
        LpOutcome::Optimal { value, .. } => value,
        other => unreachable!("envelope program is feasible and bounded below: {other:?}"),
    }
}

/// A pair `(ρ₁, ρ₂)` of functions on all of `ℝ^n` together with the norm `q`
/// they are measured against.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiecewiseGaugePair {
    norm: PolyAsymNorm,
    first: GaugeFunction,
    second: GaugeFunction,
}

impl PiecewiseGaugePair {
    pub fn new(norm: PolyAsymNorm, first: GaugeFunction, second: GaugeFunction) -> Result<Self> {
        check_dim(norm.dim(), first.dim())?;
        check_dim(norm.dim(), second.dim())?;
        Ok(Self { norm, first, second })
    }

    pub fn norm(&self) -> &PolyAsymNorm {
        &self.norm
    }

    pub fn first(&self) -> &GaugeFunction {
        &self.first
    }

    pub fn second(&self) -> &GaugeFunction {
        &self.second
    }

    pub fn rho1(&self, z: &RatVec) -> Result<Rat> {
        self.first.eval(z)
    }

    pub fn rho2(&self, z: &RatVec) -> Result<Rat> {
        self.second.eval(z)
    }

    /// Checks nonnegativity, (a), (b1), (b2), midpoint convexity (c) and (d)
    /// on each sampled pair, in both orders. Reports the first violation.
    pub fn verify_pairs(&self, pairs: &[(RatVec, RatVec)]) -> Result<()> {
        let q = &self.norm;
        let half = rat(1, 2);
        for (z, w) in pairs {
            let fail = |condition: &str| Error::InvalidPair {
                condition: condition.into(),
                sample: format!("{z}, {w}"),
            };
            let (f_z, f_w) = (self.rho1(z)?, self.rho1(w)?);
            let (s_z, s_w) = (self.rho2(z)?, self.rho2(w)?);
            if [&f_z, &f_w, &s_z, &s_w].iter().any(|x| x.is_negative()) {
                return Err(fail("nonnegative"));
            }
            let (zw, wz) = (q.value(&(z - w)), q.value(&(w - z)));
            if &f_w + &s_z < wz || &f_z + &s_w < zw {
                return Err(fail("a"));
            }
            if &f_w - &f_z > wz || &f_z - &f_w > zw {
                return Err(fail("b1"));
            }
            if &s_w - &s_z > zw || &s_z - &s_w > wz {
                return Err(fail("b2"));
            }
            let mid = (z + w).scale(&half);
            if self.rho1(&mid)? > (&f_z + &f_w) * &half || self.rho2(&mid)? > (&s_z + &s_w) * &half {
                return Err(fail("c"));
            }
            if (&f_z + &s_z).is_zero() || (&f_w + &s_w).is_zero() {
                return Err(fail("d"));
            }
        }
        Ok(())
    }
}

/// `(min_x [ρ₁(x) + q(z - x)], min_x [ρ₂(x) + q(x - z)])` over the table anchors.
pub fn single_anchor_extension(table: &FinitePairTable, q: &PolyAsymNorm, z: &RatVec) -> (Rat, Rat) {
    let pts = table.points();
    let first = pts.iter().zip(table.rho1()).map(|(x, v)| v + q.value(&(z - x))).min();
    let second = pts.iter().zip(table.rho2()).map(|(x, v)| v + q.value(&(x - z))).min();
    (first.expect("table is nonempty"), second.expect("table is nonempty"))
}

/// Extends a finite table to all of `ℝ^n` by the norm-spread convex envelope.
pub fn extend_pair_globally(table: &FinitePairTable, q: &PolyAsymNorm) -> Result<PiecewiseGaugePair> {
    check_dim(q.dim(), table.dim())?;
    if !q.is_t1() {
        return Err(Error::UnsupportedNorm("norm is not T1: q(x) = 0 for some x ≠ 0".into()));
    }
    if let Some(v) = table.domination_violation(q) {
        return Err(Error::InvalidInput(format!("table violates the domination condition: {v:?}")));
    }
    if let Some(k) = table.degenerate_point() {
        return Err(Error::InvalidInput(format!("ρ₁ + ρ₂ vanishes at {}", table.points()[k])));
    }
    let first = GaugeFunction::hull_envelope(q.clone(), table.points().to_vec(), table.rho1().to_vec(), Component::First)?;
    let second = GaugeFunction::hull_envelope(q.clone(), table.points().to_vec(), table.rho2().to_vec(), Component::Second)?;
    PiecewiseGaugePair::new(q.clone(), first, second)
}
