use num_traits::Signed;

use crate::error::{check_dim, Error, Result};
use crate::geometry::{pair_intersection_witness, Ball, PolyAsymNorm};
use crate::ratlp::{CertifiedEmpty, LinearProgram, LpOutcome, Rat, RatVec};

/// One center with a forward radius `r` and a backward radius `s`, standing
/// for `B_q[x, r] ∩ B_q̄[x, s]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedBall {
    pub center: RatVec,
    pub forward_radius: Rat,
    pub backward_radius: Rat,
}

impl MixedBall {
    pub fn new(center: RatVec, forward_radius: Rat, backward_radius: Rat) -> Self {
        Self { center, forward_radius, backward_radius }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedBallFamily {
    norm: PolyAsymNorm,
    entries: Vec<MixedBall>,
}

impl MixedBallFamily {
    pub fn new(norm: PolyAsymNorm, entries: Vec<MixedBall>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidInput("ball family is empty".into()));
        }
        for (index, e) in entries.iter().enumerate() {
            check_dim(norm.dim(), e.center.dim())?;
            if !e.forward_radius.is_positive() || !e.backward_radius.is_positive() {
                return Err(Error::NonPositiveRadius { index });
            }
        }
        Ok(Self { norm, entries })
    }

    pub fn norm(&self) -> &PolyAsymNorm {
        &self.norm
    }

    pub fn entries(&self) -> &[MixedBall] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The same sets described through the conjugate norm: forward and
    /// backward radii trade places.
    pub fn conjugate_swapped(&self) -> Self {
        Self {
            norm: self.norm.conjugate(),
            entries: self
                .entries
                .iter()
                .map(|e| MixedBall::new(e.center.clone(), e.backward_radius.clone(), e.forward_radius.clone()))
                .collect(),
        }
    }

    /// Whether `y` lies in every forward and backward ball of the family.
    pub fn contains(&self, y: &RatVec) -> Result<bool> {
        check_dim(self.norm.dim(), y.dim())?;
        Ok(self.entries.iter().all(|e| {
            self.norm.value(&(y - &e.center)) <= e.forward_radius
                && self.norm.value(&(&e.center - y)) <= e.backward_radius
        }))
    }
}

/// An ordered pair `(from, to)` with `q(x_to - x_from) > r_from + s_to`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairFailure {
    pub from: usize,
    pub to: usize,
    pub distance: Rat,
    pub budget: Rat,
}

/// A point of `B_q[x_from, r_from] ∩ B_q̄[x_to, s_to]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairWitness {
    pub from: usize,
    pub to: usize,
    pub point: RatVec,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CommonPoint {
    Point(RatVec),
    Empty(CertifiedEmpty),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    PremiseFails { failures: Vec<PairFailure> },
    BipHolds { point: RatVec, witnesses: Vec<PairWitness> },
    BipViolated { witnesses: Vec<PairWitness>, emptiness: CertifiedEmpty },
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::PremiseFails { .. } => "premise-fails",
            Verdict::BipHolds { .. } => "bip-holds-here",
            Verdict::BipViolated { .. } => "bip-violated-here",
        }
    }

    pub fn is_violated(&self) -> bool {
        matches!(self, Verdict::BipViolated { .. })
    }

    pub fn holds(&self) -> bool {
        matches!(self, Verdict::BipHolds { .. })
    }
}

pub fn pairwise_mixed_check(fam: &MixedBallFamily) -> Vec<PairFailure> {
    let q = fam.norm();
    let mut failures = Vec::new();
    for (i, a) in fam.entries().iter().enumerate() {
        for (j, b) in fam.entries().iter().enumerate() {
            if i == j {
                continue;
            }
            let distance = q.value(&(&b.center - &a.center));
            let budget = &a.forward_radius + &b.backward_radius;
            if distance > budget {
                failures.push(PairFailure { from: i, to: j, distance, budget });
            }
        }
    }
    failures
}

/// Witnesses for every ordered pair, or `None` if some pair fails.
pub fn pairwise_witnesses(fam: &MixedBallFamily) -> Option<Vec<PairWitness>> {
    let mut out = Vec::new();
    for (i, a) in fam.entries().iter().enumerate() {
        for (j, b) in fam.entries().iter().enumerate() {
            if i == j {
                continue;
            }
            let point = pair_intersection_witness(&a.center, &a.forward_radius, &b.center, &b.backward_radius, fam.norm())
                .expect("radii are positive")?;
            out.push(PairWitness { from: i, to: j, point });
        }
    }
    Some(out)
}

/// The system `q(y - x) ≤ r, q(x - y) ≤ s` over all entries, as linear inequalities in `y`.
pub fn mixed_intersection_program(norm: &PolyAsymNorm, entries: &[MixedBall]) -> LinearProgram {
    let mut lp = LinearProgram::feasibility(norm.dim());
    for e in entries {
        let forward = Ball::forward(norm, e.center.clone(), e.forward_radius.clone()).expect("validated entry");
        let backward = Ball::backward(norm, e.center.clone(), e.backward_radius.clone()).expect("validated entry");
        for c in forward.constraints().into_iter().chain(backward.constraints()) {
            lp.push_le(c.row, c.bound);
        }
    }
    lp
}

pub fn common_point(fam: &MixedBallFamily) -> CommonPoint {
    let program = mixed_intersection_program(fam.norm(), fam.entries());
    match program.solve().expect("well-formed program") {
        LpOutcome::Optimal { point, .. } => {
            assert!(fam.contains(&point).expect("dimension checked"));
            CommonPoint::Point(point)
        }
        LpOutcome::Infeasible { certificate } => {
            let empty = CertifiedEmpty { program, certificate };
            assert!(empty.verify());
            CommonPoint::Empty(empty)
        }
        LpOutcome::Unbounded { .. } => unreachable!("feasibility programs are never unbounded"),
    }
}

pub fn mixed_bip_report(fam: &MixedBallFamily) -> Verdict {
    let failures = pairwise_mixed_check(fam);
    if !failures.is_empty() {
        return Verdict::PremiseFails { failures };
    }
    let witnesses = pairwise_witnesses(fam).expect("pairwise premise holds");
    match common_point(fam) {
        CommonPoint::Point(point) => Verdict::BipHolds { point, witnesses },
        CommonPoint::Empty(emptiness) => Verdict::BipViolated { witnesses, emptiness },
    }
}

/// A point `z` with `q(z - x) ≤ r` and `q(y - z) ≤ s`.
pub fn metric_convexity_witness(x: &RatVec, y: &RatVec, r: &Rat, s: &Rat, q: &PolyAsymNorm) -> Result<RatVec> {
    if !(r + s).is_positive() {
        return Err(Error::DegenerateRadius);
    }
    pair_intersection_witness(x, r, y, s, q)?.ok_or_else(|| Error::NoWitness {
        distance: Box::new(q.value(&(y - x))),
        budget: Box::new(r + s),
    })
}

/// The report for a family of balls of the symmetrized norm, given as a
/// mixed family with equal forward and backward radii.
pub fn symmetrized_family_check(fam: &MixedBallFamily) -> Result<Verdict> {
    if let Some(index) = fam.entries().iter().position(|e| e.forward_radius != e.backward_radius) {
        return Err(Error::ShapeMismatch { index });
    }
    Ok(mixed_bip_report(fam))
}
