use num_traits::{Signed, Zero};

use super::norm::PolyAsymNorm;
use crate::error::{check_dim, Error, Result};
use crate::ratlp::{Constraint, Rat, RatVec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    /// `{y : p(y - center) ≤ radius}`
    Forward,
    /// `{y : p(center - y) ≤ radius}`, the forward ball of the conjugate norm
    Backward,
}

/// A closed ball of a polyhedral asymmetric norm. Radius zero is allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ball<'a> {
    norm: &'a PolyAsymNorm,
    center: RatVec,
    radius: Rat,
    orientation: Orientation,
}

impl<'a> Ball<'a> {
    pub fn new(norm: &'a PolyAsymNorm, center: RatVec, radius: Rat, orientation: Orientation) -> Result<Self> {
        check_dim(norm.dim(), center.dim())?;
        if radius.is_negative() {
            return Err(Error::NegativeRadius(radius));
        }
        Ok(Self { norm, center, radius, orientation })
    }

    pub fn forward(norm: &'a PolyAsymNorm, center: RatVec, radius: Rat) -> Result<Self> {
        Self::new(norm, center, radius, Orientation::Forward)
    }

    pub fn backward(norm: &'a PolyAsymNorm, center: RatVec, radius: Rat) -> Result<Self> {
        Self::new(norm, center, radius, Orientation::Backward)
    }

    pub fn norm(&self) -> &PolyAsymNorm {
        self.norm
    }

    pub fn center(&self) -> &RatVec {
        &self.center
    }

    pub fn radius(&self) -> &Rat {
        &self.radius
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn contains(&self, y: &RatVec) -> Result<bool> {
        check_dim(self.norm.dim(), y.dim())?;
        let offset = match self.orientation {
            Orientation::Forward => y - &self.center,
            Orientation::Backward => &self.center - y,
        };
        Ok(self.norm.value(&offset) <= self.radius)
    }

    /// The ball as a list of linear inequalities, one per generator.
    pub fn constraints(&self) -> Vec<Constraint> {
        self.norm
            .generators()
            .iter()
            .map(|a| {
                let row = match self.orientation {
                    Orientation::Forward => a.clone(),
                    Orientation::Backward => -a,
                };
                let bound = &self.radius + row.dot(&self.center);
                Constraint { row, bound }
            })
            .collect()
    }
}

/// Decides whether `B_q[y1, r1] ∩ B_q̄[y2, r2]` is nonempty; it is exactly when
/// `q(y2 - y1) ≤ r1 + r2`, and then `(r2 y1 + r1 y2) / (r1 + r2)` lies in both balls.
pub fn pair_intersection_witness(
    y1: &RatVec,
    r1: &Rat,
    y2: &RatVec,
    r2: &Rat,
    q: &PolyAsymNorm,
) -> Result<Option<RatVec>> {
    check_dim(q.dim(), y1.dim())?;
    check_dim(q.dim(), y2.dim())?;
    if r1.is_negative() {
        return Err(Error::NegativeRadius(r1.clone()));
    }
    if r2.is_negative() {
        return Err(Error::NegativeRadius(r2.clone()));
    }
    let total = r1 + r2;
    if total.is_zero() {
        return if y1 == y2 { Ok(Some(y1.clone())) } else { Err(Error::DegenerateRadius) };
    }
    if q.value(&(y2 - y1)) > total {
        return Ok(None);
    }
    let witness = &y1.scale(&(r2 / &total)) + &y2.scale(&(r1 / &total));
    debug_assert!(q.value(&(&witness - y1)) <= *r1 && q.value(&(y2 - &witness)) <= *r2);
    Ok(Some(witness))
}
