#![allow(dead_code)]

use asymspace_core::bip::{pairwise_mixed_check, MixedBall, MixedBallFamily, TriangleCase};
use asymspace_core::geometry::{PartialOperator, PolyAsymNorm, Subspace};
use asymspace_core::ratlp::{int, positive_part, Rat, RatVec};
use asymspace_core::sample::Sampler;
use num_traits::Signed;

pub fn v(c: &[i64]) -> RatVec {
    RatVec::from_ints(c)
}

/// Closed forms for the named norms, written out coordinate by coordinate.
#[derive(Debug, Clone, Copy)]
pub enum Closed {
    PositivePart,
    AsymSup,
    MaxAbs,
    SumAbs,
    Hexagon,
    Simplex,
}

impl Closed {
    pub fn eval(self, x: &RatVec) -> Rat {
        let c = x.coords();
        match self {
            Closed::PositivePart => positive_part(&c[0]),
            Closed::AsymSup => c.iter().map(positive_part).max().unwrap(),
            Closed::MaxAbs => c.iter().map(|a| a.abs()).max().unwrap(),
            Closed::SumAbs => c.iter().map(|a| a.abs()).sum(),
            Closed::Hexagon => [c[0].abs(), c[1].abs(), (&c[0] + &c[1]).abs()].into_iter().max().unwrap(),
            Closed::Simplex => [c[0].clone(), c[1].clone(), -(&c[0] + &c[1])].into_iter().max().unwrap(),
        }
    }
}

pub struct CorpusNorm {
    pub name: &'static str,
    pub norm: PolyAsymNorm,
    pub closed: Closed,
}

pub fn corpus() -> Vec<CorpusNorm> {
    let entry = |name, norm, closed| CorpusNorm { name, norm, closed };
    vec![
        entry("u", PolyAsymNorm::positive_part(), Closed::PositivePart),
        entry("asym-sup-2", PolyAsymNorm::asym_sup(2), Closed::AsymSup),
        entry("asym-sup-3", PolyAsymNorm::asym_sup(3), Closed::AsymSup),
        entry("max-2", PolyAsymNorm::ell_infty(2), Closed::MaxAbs),
        entry("sum-2", PolyAsymNorm::ell_one(2), Closed::SumAbs),
        entry("hexagon", PolyAsymNorm::hexagon(), Closed::Hexagon),
        entry("simplex", PolyAsymNorm::simplex_gauge(), Closed::Simplex),
    ]
}

pub fn abs_line() -> PolyAsymNorm {
    PolyAsymNorm::positive_part().symmetrize()
}

pub fn family(norm: PolyAsymNorm, entries: &[(&[i64], i64, i64)]) -> MixedBallFamily {
    let entries = entries.iter().map(|(c, r, s)| MixedBall::new(v(c), int(*r), int(*s))).collect();
    MixedBallFamily::new(norm, entries).unwrap()
}

pub fn hexagon_triangle() -> MixedBallFamily {
    family(PolyAsymNorm::hexagon(), &[(&[0, 0], 1, 1), (&[2, 0], 1, 1), (&[0, 2], 1, 1)])
}

/// Random centers and radii, with radii raised just enough that every pair
/// passes the mixed pairwise check. With `balanced`, forward and backward
/// radii stay equal.
pub fn pairwise_passing_family(s: &mut Sampler, norm: &PolyAsymNorm, balls: usize, balanced: bool) -> MixedBallFamily {
    let n = norm.dim();
    let mut entries: Vec<MixedBall> = (0..balls)
        .map(|_| {
            let r = s.positive();
            let t = if balanced { r.clone() } else { s.positive() };
            MixedBall::new(s.vector(n), r, t)
        })
        .collect();
    for i in 0..balls {
        for j in 0..balls {
            if i == j {
                continue;
            }
            let d = norm.value(&(&entries[j].center - &entries[i].center));
            let deficit = d - &entries[i].forward_radius - &entries[j].backward_radius;
            if deficit.is_positive() {
                if balanced {
                    let half = deficit / int(2);
                    for k in [i, j] {
                        entries[k].forward_radius += &half;
                        entries[k].backward_radius += &half;
                    }
                } else {
                    entries[i].forward_radius += deficit;
                }
            }
        }
    }
    let fam = MixedBallFamily::new(norm.clone(), entries).unwrap();
    assert!(pairwise_mixed_check(&fam).is_empty());
    fam
}

/// A norm on `ℝ^n` from random generators plus the negated sum of them, so
/// the origin is the average and hence inside the hull.
pub fn random_norm(s: &mut Sampler, n: usize, extra: usize) -> PolyAsymNorm {
    loop {
        let mut gens: Vec<RatVec> = (0..n + extra).map(|_| s.integer_vector(n, 4)).collect();
        let total = gens.iter().fold(RatVec::zeros(n), |acc, g| &acc + g);
        gens.push(-&total);
        if let Ok(p) = PolyAsymNorm::new(n, gens) {
            if p.is_t1() {
                return p;
            }
        }
    }
}

pub fn random_subspace(s: &mut Sampler, n: usize, k: usize) -> Subspace {
    loop {
        let basis = (0..k).map(|_| s.integer_vector(n, 3)).collect();
        if let Ok(z) = Subspace::new(n, basis) {
            return z;
        }
    }
}

/// A random operator from a proper subspace of `(ℝ^n, source)` into `target`.
pub fn random_partial_operator(s: &mut Sampler, source: &PolyAsymNorm, target: &PolyAsymNorm) -> PartialOperator {
    let n = source.dim();
    let k = 1 + s.index(n - 1);
    let z = random_subspace(s, n, k);
    let images = (0..k).map(|_| s.integer_vector(target.dim(), 3)).collect();
    PartialOperator::new(z, images, source.clone(), target.clone()).unwrap()
}

/// Random tables on distinct points, raised until the domination condition holds.
pub fn random_table(s: &mut Sampler, q: &PolyAsymNorm, size: usize) -> (Vec<RatVec>, Vec<Rat>, Vec<Rat>) {
    let mut points: Vec<RatVec> = Vec::new();
    while points.len() < size {
        let p = s.vector(q.dim());
        if !points.contains(&p) {
            points.push(p);
        }
    }
    let mut r1: Vec<Rat> = (0..size).map(|_| s.nonnegative()).collect();
    let r2: Vec<Rat> = (0..size).map(|_| s.nonnegative()).collect();
    for a in 0..size {
        for b in 0..size {
            let deficit = q.value(&(&points[a] - &points[b])) - &r1[a] - &r2[b];
            if deficit.is_positive() {
                r1[a] += deficit;
            }
        }
    }
    (points, r1, r2)
}

/// Last coordinates for a sample of each arrangement.
pub fn lasts(s: &mut Sampler, case: TriangleCase) -> (Rat, Rat) {
    let (a, b) = (s.positive(), s.positive());
    let (big, small) = if a > b { (a, b) } else if b > a { (b, a) } else { (&a + int(1), a) };
    match case {
        TriangleCase::BothFlat => (int(0), int(0)),
        TriangleCase::OneFlatPositive => (int(0), big),
        TriangleCase::OneFlatNegative => (-big, int(0)),
        TriangleCase::BothPositive => (big, small),
        TriangleCase::BothNegative => (-small, -big),
        TriangleCase::Cancelling => (big.clone(), -big),
        TriangleCase::MixedPositiveSum => (-small, big),
        TriangleCase::MixedNegativeSum => (small, -big),
    }
}
