use std::collections::HashSet;

use num_traits::{Signed, Zero};

use crate::error::{check_dim, Error, Result};
use crate::geometry::PolyAsymNorm;
use crate::ratlp::{Rat, RatVec};

/// Values of `(ρ₁, ρ₂)` on a finite set of distinct points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePairTable {
    points: Vec<RatVec>,
    rho1: Vec<Rat>,
    rho2: Vec<Rat>,
}

/// Which of the conditions on a pair failed, and where.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TableViolation {
    /// `ρ₁(z′) + ρ₂(z) < q(z′ - z)` with `z′ = points[first]`, `z = points[second]`
    Domination { first: usize, second: usize },
    /// `ρ₁(z′) - ρ₁(z) > q(z′ - z)`
    FirstLipschitz { first: usize, second: usize },
    /// `ρ₂(z′) - ρ₂(z) > q(z - z′)`
    SecondLipschitz { first: usize, second: usize },
    /// `ρ₁(z) + ρ₂(z) = 0`
    Degenerate { index: usize },
}

impl FinitePairTable {
    pub fn new(points: Vec<RatVec>, rho1: Vec<Rat>, rho2: Vec<Rat>) -> Result<Self> {
        check_dim(points.len(), rho1.len())?;
        check_dim(points.len(), rho2.len())?;
        if points.is_empty() {
            return Err(Error::InvalidInput("pair table has no points".into()));
        }
        let dim = points[0].dim();
        for p in &points {
            check_dim(dim, p.dim())?;
        }
        if points.iter().collect::<HashSet<_>>().len() != points.len() {
            return Err(Error::InvalidInput("pair table points must be distinct".into()));
        }
        if rho1.iter().chain(&rho2).any(Signed::is_negative) {
            return Err(Error::InvalidInput("pair table values must be nonnegative".into()));
        }
        Ok(Self { points, rho1, rho2 })
    }

    pub fn points(&self) -> &[RatVec] {
        &self.points
    }

    pub fn rho1(&self) -> &[Rat] {
        &self.rho1
    }

    pub fn rho2(&self) -> &[Rat] {
        &self.rho2
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.points[0].dim()
    }

    fn ordered_pairs(&self) -> impl Iterator<Item = (usize, usize)> {
        let n = self.len();
        (0..n).flat_map(move |i| (0..n).map(move |j| (i, j)))
    }

    pub fn domination_violation(&self, q: &PolyAsymNorm) -> Option<TableViolation> {
        self.ordered_pairs()
            .find(|&(i, j)| &self.rho1[i] + &self.rho2[j] < q.value(&(&self.points[i] - &self.points[j])))
            .map(|(first, second)| TableViolation::Domination { first, second })
    }

    pub fn lipschitz_violation(&self, q: &PolyAsymNorm) -> Option<TableViolation> {
        for (i, j) in self.ordered_pairs() {
            let forward = q.value(&(&self.points[i] - &self.points[j]));
            if &self.rho1[i] - &self.rho1[j] > forward {
                return Some(TableViolation::FirstLipschitz { first: i, second: j });
            }
            let backward = q.value(&(&self.points[j] - &self.points[i]));
            if &self.rho2[i] - &self.rho2[j] > backward {
                return Some(TableViolation::SecondLipschitz { first: i, second: j });
            }
        }
        None
    }

    pub fn degenerate_point(&self) -> Option<usize> {
        (0..self.len()).find(|&k| (&self.rho1[k] + &self.rho2[k]).is_zero())
    }

    /// Whether both minimality equations hold exactly at every point.
    pub fn is_fixed_point(&self, q: &PolyAsymNorm) -> bool {
        lower_first(&self.points, q, &self.rho2) == self.rho1 && lower_second(&self.points, q, &self.rho1) == self.rho2
    }

    /// Pointwise `self ≤ other`.
    pub fn dominated_by(&self, other: &FinitePairTable) -> bool {
        self.points == other.points
            && self.rho1.iter().zip(&other.rho1).all(|(a, b)| a <= b)
            && self.rho2.iter().zip(&other.rho2).all(|(a, b)| a <= b)
    }
}

/// `ρ₁(z) = 0 ∨ max_{z′ ≠ z} (q(z - z′) - ρ₂(z′))`.
pub fn lower_first(points: &[RatVec], q: &PolyAsymNorm, rho2: &[Rat]) -> Vec<Rat> {
    update(points, rho2, |z, other| q.value(&(z - other)))
}

/// `ρ₂(z) = 0 ∨ max_{z′ ≠ z} (q(z′ - z) - ρ₁(z′))`.
pub fn lower_second(points: &[RatVec], q: &PolyAsymNorm, rho1: &[Rat]) -> Vec<Rat> {
    update(points, rho1, |z, other| q.value(&(other - z)))
}

fn update(points: &[RatVec], partner: &[Rat], dist: impl Fn(&RatVec, &RatVec) -> Rat) -> Vec<Rat> {
    points
        .iter()
        .enumerate()
        .map(|(k, z)| {
            points
                .iter()
                .zip(partner)
                .enumerate()
                .filter(|&(m, _)| m != k)
                .map(|(_, (other, value))| dist(z, other) - value)
                .fold(Rat::zero(), Rat::max)
        })
        .collect()
}

pub fn pass_cap(points: usize) -> usize {
    2 * points + 3
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalPair {
    pub table: FinitePairTable,
    /// number of alternating passes performed
    pub passes: usize,
    /// whether `ρ₁ + ρ₂ > 0` at every point
    pub condition_d: bool,
}

/// Lowers `(r1, r2)` by alternating the two minimality updates until both
/// equations hold exactly.
pub fn minimal_pair(points: Vec<RatVec>, q: &PolyAsymNorm, r1: Vec<Rat>, r2: Vec<Rat>) -> Result<MinimalPair> {
    let initial = FinitePairTable::new(points, r1, r2)?;
    check_dim(q.dim(), initial.dim())?;
    if let Some(v) = initial.domination_violation(q) {
        return Err(Error::InvalidInput(format!("initial tables violate the domination condition: {v:?}")));
    }
    let cap = pass_cap(initial.len());
    let mut table = initial.clone();
    for pass in 1..=cap {
        table.rho1 = lower_first(&table.points, q, &table.rho2);
        table.rho2 = lower_second(&table.points, q, &table.rho1);
        if table.is_fixed_point(q) {
            debug_assert!(table.dominated_by(&initial));
            let condition_d = table.degenerate_point().is_none();
            return Ok(MinimalPair { table, passes: pass, condition_d });
        }
    }
    Err(Error::ConvergenceFailure { passes: cap })
}
