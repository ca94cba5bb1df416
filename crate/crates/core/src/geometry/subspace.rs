use crate::error::{check_dim, Error, Result};
use crate::ratlp::{rank, solve_linear, Matrix, Rat, RatVec};

/// A linear subspace of `ℝ^n` with a fixed basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<RatVec>,
}

impl Subspace {
    pub fn new(ambient_dim: usize, basis: Vec<RatVec>) -> Result<Self> {
        for b in &basis {
            check_dim(ambient_dim, b.dim())?;
        }
        if rank(&basis) < basis.len() {
            return Err(Error::DependentBasis);
        }
        Ok(Self { ambient_dim, basis })
    }

    /// `ℝ^n` with the standard basis.
    pub fn whole(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: (0..ambient_dim).map(|k| RatVec::unit(ambient_dim, k)).collect(),
        }
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Self { ambient_dim, basis: Vec::new() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[RatVec] {
        &self.basis
    }

    pub fn is_whole(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    /// The `n × k` matrix whose columns are the basis vectors.
    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_columns(self.ambient_dim, &self.basis)
    }

    /// `Σ c_k b_k`.
    pub fn point(&self, coords: &RatVec) -> RatVec {
        assert_eq!(coords.dim(), self.dim(), "coordinate dimension mismatch");
        RatVec::combination(self.ambient_dim, coords.coords(), &self.basis)
    }

    /// Basis coordinates of `x`, or `None` when `x` is not in the subspace.
    pub fn coordinates(&self, x: &RatVec) -> Result<Option<RatVec>> {
        check_dim(self.ambient_dim, x.dim())?;
        if self.basis.is_empty() {
            return Ok(x.is_zero().then(|| RatVec::zeros(0)));
        }
        Ok(solve_linear(&self.basis_matrix(), x))
    }

    pub fn contains(&self, x: &RatVec) -> Result<bool> {
        Ok(self.coordinates(x)?.is_some())
    }

    /// Standard unit vectors completing the basis to a basis of `ℝ^n`.
    pub fn complement_basis(&self) -> Vec<RatVec> {
        let mut spanning = self.basis.clone();
        let mut extra = Vec::new();
        for k in 0..self.ambient_dim {
            let e = RatVec::unit(self.ambient_dim, k);
            spanning.push(e.clone());
            if rank(&spanning) == spanning.len() {
                extra.push(e);
            } else {
                spanning.pop();
            }
        }
        extra
    }

    /// The subspace spanned by this basis followed by `v`.
    pub fn extended_by(&self, v: &RatVec) -> Result<Self> {
        let mut basis = self.basis.clone();
        basis.push(v.clone());
        Self::new(self.ambient_dim, basis)
    }

    /// Values of an ambient functional on the basis vectors.
    pub fn functional_values(&self, ambient_functional: &RatVec) -> Vec<Rat> {
        self.basis.iter().map(|b| ambient_functional.dot(b)).collect()
    }
}
