use num_traits::{Signed, Zero};

use super::gauge::{GaugeFunction, PiecewiseGaugePair};
use crate::error::{check_dim, Error, Result};
use crate::geometry::PolyAsymNorm;
use crate::ratlp::{hull_facets, vertices, Constraint, Rat, RatVec};
use crate::sample::Sampler;

/// The norm on `ℝ^n × ℝ` (last coordinate along the new direction `ξ`) glued
/// from a base norm on `ℝ^n` and a pair `(ρ₁, ρ₂)`:
///
/// * `μ(z, 0) = p(z)`
/// * `μ(z, t) = t ρ₂(-z/t)` for `t > 0`
/// * `μ(z, t) = -t ρ₁(-z/t)` for `t < 0`
///
/// so that `μ(z - ξ) = ρ₁(z)` and `μ(ξ - z) = ρ₂(z)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MuNorm {
    base: PolyAsymNorm,
    pair: PiecewiseGaugePair,
}

/// How the last coordinates of two summands relate; each arrangement needs
/// a different argument for the triangle inequality of `μ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TriangleCase {
    BothFlat,
    OneFlatPositive,
    OneFlatNegative,
    BothPositive,
    BothNegative,
    Cancelling,
    MixedPositiveSum,
    MixedNegativeSum,
}

impl TriangleCase {
    pub const ALL: [TriangleCase; 8] = [
        TriangleCase::BothFlat,
        TriangleCase::OneFlatPositive,
        TriangleCase::OneFlatNegative,
        TriangleCase::BothPositive,
        TriangleCase::BothNegative,
        TriangleCase::Cancelling,
        TriangleCase::MixedPositiveSum,
        TriangleCase::MixedNegativeSum,
    ];

    pub fn classify(t: &Rat, t2: &Rat) -> Self {
        let (a, b) = if t.is_zero() { (t2, t) } else { (t, t2) };
        match (a.is_positive(), a.is_zero(), b.is_positive(), b.is_zero()) {
            (_, true, _, _) => TriangleCase::BothFlat,
            (true, _, _, true) => TriangleCase::OneFlatPositive,
            (false, _, _, true) => TriangleCase::OneFlatNegative,
            (true, _, true, _) => TriangleCase::BothPositive,
            (false, _, false, _) => TriangleCase::BothNegative,
            _ => {
                let sum = a + b;
                if sum.is_zero() {
                    TriangleCase::Cancelling
                } else if sum.is_positive() {
                    TriangleCase::MixedPositiveSum
                } else {
                    TriangleCase::MixedNegativeSum
                }
            }
        }
    }
}

impl MuNorm {
    pub fn base(&self) -> &PolyAsymNorm {
        &self.base
    }

    pub fn pair(&self) -> &PiecewiseGaugePair {
        &self.pair
    }

    /// Dimension of the glued space, one more than the base.
    pub fn dim(&self) -> usize {
        self.base.dim() + 1
    }

    pub fn eval(&self, y: &RatVec) -> Result<Rat> {
        check_dim(self.dim(), y.dim())?;
        let n = self.base.dim();
        let t = &y[n];
        let z: RatVec = y.coords()[..n].iter().cloned().collect();
        if t.is_zero() {
            return Ok(self.base.value(&z));
        }
        let arg = z.scale(&(-t.recip()));
        if t.is_positive() {
            Ok(t * self.pair.rho2(&arg)?)
        } else {
            Ok(-t * self.pair.rho1(&arg)?)
        }
    }

    /// `μ` as a maximum of linear functionals, available when both members of
    /// the pair are envelopes over the same anchors.
    ///
    /// The functionals are the vertices of
    /// `{(g, c) : g ∈ conv(generators of p), c - g·x ≤ ρ₂(x), g·x - c ≤ ρ₁(x) for every anchor x}`.
    pub fn to_poly_norm(&self) -> Result<PolyAsymNorm> {
        let (
            GaugeFunction::HullEnvelope { anchors, values: first, .. },
            GaugeFunction::HullEnvelope { anchors: anchors2, values: second, .. },
        ) = (self.pair.first(), self.pair.second())
        else {
            return Err(Error::UnsupportedNorm("polyhedral form needs envelope pairs".into()));
        };
        if anchors != anchors2 {
            return Err(Error::UnsupportedNorm("envelopes use different anchors".into()));
        }
        let n = self.base.dim();
        let one = Rat::from_integer(1.into());
        let mut constraints: Vec<Constraint> = hull_facets(n, self.base.generators())
            .into_iter()
            .map(|f| Constraint { row: f.row.extended(&[Rat::zero()]), bound: f.bound })
            .collect();
        for ((x, r1), r2) in anchors.iter().zip(first).zip(second) {
            constraints.push(Constraint { row: (-x).extended(std::slice::from_ref(&one)), bound: r2.clone() });
            constraints.push(Constraint { row: x.extended(&[-one.clone()]), bound: r1.clone() });
        }
        PolyAsymNorm::new(n + 1, vertices(n + 1, &constraints))
    }
}

/// Deterministic sample pairs in `ℝ^dim` for [`PiecewiseGaugePair::verify_pairs`].
pub fn verification_pairs(dim: usize, count: usize, seed: u64) -> Vec<(RatVec, RatVec)> {
    let mut sampler = Sampler::new(seed);
    (0..count).map(|_| (sampler.vector(dim), sampler.vector(dim))).collect()
}

/// Glues `p` and the pair into `μ` after checking the pair on the given samples.
pub fn build_mu_norm(p: &PolyAsymNorm, pair: PiecewiseGaugePair, samples: &[(RatVec, RatVec)]) -> Result<MuNorm> {
    if pair.norm() != p {
        return Err(Error::InvalidInput("pair is measured against a different norm".into()));
    }
    for (z, w) in samples {
        check_dim(p.dim(), z.dim())?;
        check_dim(p.dim(), w.dim())?;
    }
    pair.verify_pairs(samples)?;
    Ok(MuNorm { base: p.clone(), pair })
}
