use std::collections::HashSet;

use num_traits::Zero;

use crate::error::{check_dim, Error, Result};
use crate::ratlp::{hull_membership, int, HullMembership, LinearProgram, Matrix, Rat, RatVec};

/// An asymmetric norm `p(x) = max_i a_i · x` given by finitely many linear
/// functionals `a_i`.
///
/// Construction checks that the zero functional lies in the hull of the
/// generators (so `p ≥ 0`) and that the generators span the dual space (so
/// `p(x) = p(-x) = 0` forces `x = 0`). Positive homogeneity and subadditivity
/// hold for any maximum of linear functionals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyAsymNorm {
    dim: usize,
    generators: Vec<RatVec>,
}

impl PolyAsymNorm {
    pub fn new(dim: usize, generators: Vec<RatVec>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("dimension must be positive".into()));
        }
        if generators.is_empty() {
            return Err(Error::NoGenerators);
        }
        for g in &generators {
            check_dim(dim, g.dim())?;
        }
        let mut seen = HashSet::new();
        let generators: Vec<RatVec> = generators.into_iter().filter(|g| seen.insert(g.clone())).collect();
        if let HullMembership::Outside { .. } = hull_membership(&RatVec::zeros(dim), &generators)? {
            return Err(Error::NormCanBeNegative);
        }
        let rank = Matrix::from_rows(dim, generators.clone()).rank();
        if rank < dim {
            return Err(Error::RankDeficient { rank, dim });
        }
        Ok(Self { dim, generators })
    }

    fn from_ints(dim: usize, generators: &[&[i64]]) -> Self {
        Self::new(dim, generators.iter().map(|g| RatVec::from_ints(g)).collect())
            .expect("built-in norm is valid")
    }

    /// `u(t) = max(t, 0)` on the real line.
    pub fn positive_part() -> Self {
        Self::from_ints(1, &[&[1], &[0]])
    }

    /// `q̃(x) = max_i max(x_i, 0)` on `ℝ^k`: the coordinate functionals plus zero.
    pub fn asym_sup(k: usize) -> Self {
        let mut gens: Vec<RatVec> = (0..k).map(|i| RatVec::unit(k, i)).collect();
        gens.push(RatVec::zeros(k));
        Self::new(k, gens).expect("asymmetric sup norm is valid")
    }

    /// The max norm on `ℝ^k`.
    pub fn ell_infty(k: usize) -> Self {
        let gens = (0..k)
            .flat_map(|i| {
                let e = RatVec::unit(k, i);
                [-&e, e]
            })
            .collect();
        Self::new(k, gens).expect("max norm is valid")
    }

    /// The sum norm on `ℝ^k`, generated by all sign vectors.
    pub fn ell_one(k: usize) -> Self {
        let gens = (0..1usize << k)
            .map(|mask| (0..k).map(|i| if mask >> i & 1 == 1 { int(1) } else { int(-1) }).collect())
            .collect();
        Self::new(k, gens).expect("sum norm is valid")
    }

    /// Hexagonal gauge on `ℝ²` generated by `±e1, ±e2, ±(e1 + e2)`.
    pub fn hexagon() -> Self {
        Self::from_ints(2, &[&[1, 0], &[-1, 0], &[0, 1], &[0, -1], &[1, 1], &[-1, -1]])
    }

    /// Asymmetric triangle gauge on `ℝ²` generated by `e1, e2, -(e1 + e2)`.
    pub fn simplex_gauge() -> Self {
        Self::from_ints(2, &[&[1, 0], &[0, 1], &[-1, -1]])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[RatVec] {
        &self.generators
    }

    pub fn eval(&self, x: &RatVec) -> Result<Rat> {
        check_dim(self.dim, x.dim())?;
        Ok(self.value(x))
    }

    /// `eval` without the dimension check; panics on mismatch.
    pub fn value(&self, x: &RatVec) -> Rat {
        self.generators
            .iter()
            .map(|a| a.dot(x))
            .max()
            .expect("norm has generators")
    }

    /// `d_p(x, y) = p(y - x)`.
    pub fn distance(&self, x: &RatVec, y: &RatVec) -> Result<Rat> {
        check_dim(self.dim, x.dim())?;
        check_dim(self.dim, y.dim())?;
        Ok(self.value(&(y - x)))
    }

    /// `p̄(x) = p(-x)`.
    pub fn conjugate(&self) -> Self {
        Self {
            dim: self.dim,
            generators: self.generators.iter().map(|g| -g).collect(),
        }
    }

    /// `p^s(x) = max(p(x), p(-x))`, a symmetric norm.
    pub fn symmetrize(&self) -> Self {
        let mut seen = HashSet::new();
        let generators = self
            .generators
            .iter()
            .cloned()
            .chain(self.generators.iter().map(|g| -g))
            .filter(|g| seen.insert(g.clone()))
            .collect();
        Self { dim: self.dim, generators }
    }

    /// `x ↦ p(M x)` for a `dim × k` matrix `M` of rank `k`; the generators are `Mᵀ a_i`.
    pub fn pullback(&self, map: &Matrix) -> Result<Self> {
        check_dim(self.dim, map.nrows())?;
        let gens = self.generators.iter().map(|a| map.apply_transpose(a)).collect();
        Self::new(map.ncols(), gens)
    }

    /// `x ↦ β p(x)` for `β > 0`.
    pub fn scaled(&self, factor: &Rat) -> Result<Self> {
        if factor <= &Rat::zero() {
            return Err(Error::InvalidInput(format!("norm scale {factor} must be positive")));
        }
        Ok(Self {
            dim: self.dim,
            generators: self.generators.iter().map(|g| g.scale(factor)).collect(),
        })
    }

    /// Whether `p(x) > 0` for all `x ≠ 0`, i.e. the cone `{x : a_i·x ≤ 0 ∀i}` is `{0}`.
    pub fn is_t1(&self) -> bool {
        (0..self.dim).all(|axis| {
            [int(1), int(-1)].iter().all(|sign| {
                let mut lp = LinearProgram::maximize(RatVec::unit(self.dim, axis).scale(sign));
                for a in &self.generators {
                    lp.push_le(a.clone(), Rat::zero());
                }
                lp.solve().expect("well-formed program").is_optimal()
            })
        })
    }

    /// Whether this is `q̃` on `ℝ^k`: generators exactly the unit vectors and zero.
    pub fn is_asym_sup_form(&self) -> bool {
        let expected = Self::asym_sup(self.dim);
        let mine: HashSet<&RatVec> = self.generators.iter().collect();
        let theirs: HashSet<&RatVec> = expected.generators.iter().collect();
        mine == theirs
    }
}
