use std::fmt;

use num_traits::Zero;

use super::norm::PolyAsymNorm;
use super::subspace::Subspace;
use crate::error::{check_dim, Error, Result};
use crate::ratlp::{int, LinearProgram, LpOutcome, Matrix, Rat, RatVec};

/// `sup { q(T x) : p(x) ≤ 1 }`, which is infinite when `T` is not `(p, q)`-continuous.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum OperatorNorm {
    Finite(Rat),
    Unbounded,
}

impl OperatorNorm {
    pub fn finite(&self) -> Option<&Rat> {
        match self {
            OperatorNorm::Finite(v) => Some(v),
            OperatorNorm::Unbounded => None,
        }
    }

    pub fn is_bounded(&self) -> bool {
        matches!(self, OperatorNorm::Finite(_))
    }
}

impl fmt::Display for OperatorNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OperatorNorm::Finite(v) => write!(f, "{v}"),
            OperatorNorm::Unbounded => f.write_str("unbounded"),
        }
    }
}

/// A linear map defined on a subspace `Z ⊆ ℝ^n`, given by the images of the
/// basis of `Z`, between two polyhedral asymmetric normed spaces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialOperator {
    domain: Subspace,
    images: Vec<RatVec>,
    source: PolyAsymNorm,
    target: PolyAsymNorm,
}

impl PartialOperator {
    pub fn new(domain: Subspace, images: Vec<RatVec>, source: PolyAsymNorm, target: PolyAsymNorm) -> Result<Self> {
        check_dim(source.dim(), domain.ambient_dim())?;
        check_dim(domain.dim(), images.len())?;
        for y in &images {
            check_dim(target.dim(), y.dim())?;
        }
        Ok(Self { domain, images, source, target })
    }

    /// An operator defined everywhere, given by its `m × n` matrix.
    pub fn total(matrix: &Matrix, source: PolyAsymNorm, target: PolyAsymNorm) -> Result<Self> {
        check_dim(source.dim(), matrix.ncols())?;
        check_dim(target.dim(), matrix.nrows())?;
        let domain = Subspace::whole(source.dim());
        Self::new(domain, matrix.columns(), source, target)
    }

    pub fn domain(&self) -> &Subspace {
        &self.domain
    }

    pub fn images(&self) -> &[RatVec] {
        &self.images
    }

    pub fn source(&self) -> &PolyAsymNorm {
        &self.source
    }

    pub fn target(&self) -> &PolyAsymNorm {
        &self.target
    }

    pub fn is_total(&self) -> bool {
        self.domain.is_whole()
    }

    /// The `m × k` matrix of the operator in domain basis coordinates.
    pub fn coordinate_matrix(&self) -> Matrix {
        Matrix::from_columns(self.target.dim(), &self.images)
    }

    /// `T` applied to basis coordinates.
    pub fn apply_coords(&self, coords: &RatVec) -> RatVec {
        RatVec::combination(self.target.dim(), coords.coords(), &self.images)
    }

    pub fn apply(&self, x: &RatVec) -> Result<RatVec> {
        let coords = self
            .domain
            .coordinates(x)?
            .ok_or_else(|| Error::InvalidInput(format!("{x} is outside the operator domain")))?;
        Ok(self.apply_coords(&coords))
    }

    /// The `m × n` matrix of a total operator.
    pub fn full_matrix(&self) -> Option<Matrix> {
        if !self.is_total() {
            return None;
        }
        let inverse = self.domain.basis_matrix().inverse()?;
        Some(self.coordinate_matrix().mul(&inverse))
    }

    /// The source norm restricted to the domain, in basis coordinates.
    /// `None` for the zero subspace.
    pub fn domain_norm(&self) -> Option<PolyAsymNorm> {
        if self.domain.dim() == 0 {
            return None;
        }
        let restricted = self
            .source
            .pullback(&self.domain.basis_matrix())
            .expect("restriction of a valid norm to a subspace is valid");
        Some(restricted)
    }

    pub fn operator_norm(&self) -> OperatorNorm {
        let Some(restricted) = self.domain_norm() else {
            return OperatorNorm::Finite(Rat::zero());
        };
        let matrix = self.coordinate_matrix();
        let mut best = Rat::zero();
        for b in self.target.generators() {
            let mut lp = LinearProgram::maximize(matrix.apply_transpose(b));
            for a in restricted.generators() {
                lp.push_le(a.clone(), int(1));
            }
            match lp.solve().expect("well-formed program") {
                LpOutcome::Optimal { value, .. } => best = best.max(value),
                LpOutcome::Unbounded { .. } => return OperatorNorm::Unbounded,
                LpOutcome::Infeasible { .. } => unreachable!("the origin is feasible"),
            }
        }
        OperatorNorm::Finite(best)
    }

    /// The same map between different norms of matching dimensions.
    pub fn with_norms(&self, source: PolyAsymNorm, target: PolyAsymNorm) -> Result<Self> {
        Self::new(self.domain.clone(), self.images.clone(), source, target)
    }
}

/// `E x = (a_1·x, …, a_m·x)` into `ℝ^m` with the asymmetric sup norm; an isometry.
pub fn embed_into_ellinfty(p: &PolyAsymNorm) -> PartialOperator {
    let m = p.generators().len();
    let matrix = Matrix::from_rows(p.dim(), p.generators().to_vec());
    PartialOperator::total(&matrix, p.clone(), PolyAsymNorm::asym_sup(m)).expect("dimensions agree by construction")
}

/// Splits an operator into an asymmetric-sup target into its coordinate
/// functionals, each an operator into `(ℝ, u)`.
pub fn represent_operator_by_functionals(t: &PartialOperator) -> Result<Vec<PartialOperator>> {
    if !t.target().is_asym_sup_form() {
        return Err(Error::UnsupportedTarget(
            "target norm must be the asymmetric sup norm".into(),
        ));
    }
    (0..t.target().dim())
        .map(|i| {
            let images = t.images().iter().map(|y| RatVec::new(vec![y[i].clone()])).collect();
            PartialOperator::new(t.domain().clone(), images, t.source().clone(), PolyAsymNorm::positive_part())
        })
        .collect()
}
