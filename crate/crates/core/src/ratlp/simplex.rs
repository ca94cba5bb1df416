//! Two-phase tableau simplex over exact rationals.
//!
//! Variables are free. Internally every variable is split into a positive and
//! a negative part, every inequality receives a slack, and rows whose slack
//! cannot start in the basis receive an artificial variable. Pivoting follows
//! Bland's rule, so degenerate programs terminate.
//!
//! Every outcome is re-verified exactly before it is returned: optimal points
//! are substituted into all constraints, infeasibility comes with Farkas
//! multipliers `y` such that `yᵀA = 0` and `yᵀb < 0`, and unbounded programs
//! come with an improving recession direction.

use num_traits::{One, Signed, Zero};

use super::rat::{Rat, RatVec};
use crate::error::{check_dim, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Maximize,
    Minimize,
    Feasibility,
}

/// `row · x ≤ bound`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub row: RatVec,
    pub bound: Rat,
}

/// `row · x = value`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equality {
    pub row: RatVec,
    pub value: Rat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProgram {
    pub dim: usize,
    pub sense: Sense,
    pub objective: RatVec,
    pub constraints: Vec<Constraint>,
    pub equalities: Vec<Equality>,
}

impl LinearProgram {
    pub fn new(sense: Sense, objective: RatVec) -> Self {
        Self {
            dim: objective.dim(),
            sense,
            objective,
            constraints: Vec::new(),
            equalities: Vec::new(),
        }
    }

    pub fn maximize(objective: RatVec) -> Self {
        Self::new(Sense::Maximize, objective)
    }

    pub fn minimize(objective: RatVec) -> Self {
        Self::new(Sense::Minimize, objective)
    }

    pub fn feasibility(dim: usize) -> Self {
        Self::new(Sense::Feasibility, RatVec::zeros(dim))
    }

    pub fn push_le(&mut self, row: RatVec, bound: Rat) -> &mut Self {
        self.constraints.push(Constraint { row, bound });
        self
    }

    pub fn push_eq(&mut self, row: RatVec, value: Rat) -> &mut Self {
        self.equalities.push(Equality { row, value });
        self
    }

    pub fn validate(&self) -> Result<()> {
        check_dim(self.dim, self.objective.dim())?;
        for c in &self.constraints {
            check_dim(self.dim, c.row.dim())?;
        }
        for e in &self.equalities {
            check_dim(self.dim, e.row.dim())?;
        }
        Ok(())
    }

    /// Exact feasibility of `x`.
    pub fn is_feasible(&self, x: &RatVec) -> bool {
        x.dim() == self.dim
            && self.constraints.iter().all(|c| c.row.dot(x) <= c.bound)
            && self.equalities.iter().all(|e| e.row.dot(x) == e.value)
    }

    /// Exact check that `d` is a recession direction of the feasible region.
    pub fn is_recession_direction(&self, d: &RatVec) -> bool {
        d.dim() == self.dim
            && self.constraints.iter().all(|c| !c.row.dot(d).is_positive())
            && self.equalities.iter().all(|e| e.row.dot(d).is_zero())
    }

    pub fn solve(&self) -> Result<LpOutcome> {
        solve(self)
    }
}

/// Multipliers proving `{x : A x ≤ b, E x = f}` empty: `y ≥ 0`, `w` free,
/// `yᵀA + wᵀE = 0` and `yᵀb + wᵀf < 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FarkasCertificate {
    pub inequality_multipliers: Vec<Rat>,
    pub equality_multipliers: Vec<Rat>,
}

impl FarkasCertificate {
    /// The combined functional `yᵀA + wᵀE`.
    pub fn combined_row(&self, lp: &LinearProgram) -> RatVec {
        let mut acc = RatVec::zeros(lp.dim);
        for (y, c) in self.inequality_multipliers.iter().zip(&lp.constraints) {
            if !y.is_zero() {
                acc = acc.add_scaled(y, &c.row);
            }
        }
        for (w, e) in self.equality_multipliers.iter().zip(&lp.equalities) {
            if !w.is_zero() {
                acc = acc.add_scaled(w, &e.row);
            }
        }
        acc
    }

    /// The combined right-hand side `yᵀb + wᵀf`.
    pub fn combined_bound(&self, lp: &LinearProgram) -> Rat {
        let ineq = self
            .inequality_multipliers
            .iter()
            .zip(&lp.constraints)
            .fold(Rat::zero(), |acc, (y, c)| acc + y * &c.bound);
        self.equality_multipliers
            .iter()
            .zip(&lp.equalities)
            .fold(ineq, |acc, (w, e)| acc + w * &e.value)
    }

    pub fn verify(&self, lp: &LinearProgram) -> bool {
        self.inequality_multipliers.len() == lp.constraints.len()
            && self.equality_multipliers.len() == lp.equalities.len()
            && self.inequality_multipliers.iter().all(|y| !y.is_negative())
            && self.combined_row(lp).is_zero()
            && self.combined_bound(lp).is_negative()
    }
}

/// An infeasible linear system together with its Farkas certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertifiedEmpty {
    pub program: LinearProgram,
    pub certificate: FarkasCertificate,
}

impl CertifiedEmpty {
    pub fn verify(&self) -> bool {
        self.certificate.verify(&self.program)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { point: RatVec, value: Rat },
    Infeasible { certificate: FarkasCertificate },
    /// `point` is feasible; `ray` is a recession direction along which the
    /// objective strictly improves.
    Unbounded { point: RatVec, ray: RatVec },
}

impl LpOutcome {
    pub fn is_optimal(&self) -> bool {
        matches!(self, LpOutcome::Optimal { .. })
    }

    pub fn is_infeasible(&self) -> bool {
        matches!(self, LpOutcome::Infeasible { .. })
    }

    pub fn is_unbounded(&self) -> bool {
        matches!(self, LpOutcome::Unbounded { .. })
    }

    pub fn value(&self) -> Option<&Rat> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn point(&self) -> Option<&RatVec> {
        match self {
            LpOutcome::Optimal { point, .. } | LpOutcome::Unbounded { point, .. } => Some(point),
            LpOutcome::Infeasible { .. } => None,
        }
    }
}

struct Tableau {
    rows: Vec<Vec<Rat>>,
    rhs: Vec<Rat>,
    /// reduced costs; `obj_rhs` holds minus the current objective value
    obj: Vec<Rat>,
    obj_rhs: Rat,
    basis: Vec<usize>,
}

enum Pivoting {
    Optimal,
    Unbounded(usize),
}

impl Tableau {
    fn ncols(&self) -> usize {
        self.obj.len()
    }

    fn set_costs(&mut self, costs: &[Rat]) {
        self.obj = costs.to_vec();
        self.obj_rhs = Rat::zero();
        for (r, &b) in self.basis.iter().enumerate() {
            let cb = &costs[b];
            if cb.is_zero() {
                continue;
            }
            for (o, t) in self.obj.iter_mut().zip(&self.rows[r]) {
                if !t.is_zero() {
                    *o -= cb * t;
                }
            }
            self.obj_rhs -= cb * &self.rhs[r];
        }
    }

    fn pivot(&mut self, pr: usize, pc: usize) {
        let inv = self.rows[pr][pc].recip();
        for entry in self.rows[pr].iter_mut() {
            if !entry.is_zero() {
                *entry *= &inv;
            }
        }
        self.rhs[pr] *= &inv;
        let support: Vec<usize> = (0..self.ncols()).filter(|&c| !self.rows[pr][c].is_zero()).collect();
        let pivot_row = std::mem::take(&mut self.rows[pr]);
        let pivot_rhs = self.rhs[pr].clone();
        for (r, row) in self.rows.iter_mut().enumerate() {
            if r == pr || row[pc].is_zero() {
                continue;
            }
            let factor = row[pc].clone();
            for &c in &support {
                row[c] -= &factor * &pivot_row[c];
            }
            self.rhs[r] -= &factor * &pivot_rhs;
        }
        if !self.obj[pc].is_zero() {
            let factor = self.obj[pc].clone();
            for &c in &support {
                self.obj[c] -= &factor * &pivot_row[c];
            }
            self.obj_rhs -= &factor * &pivot_rhs;
        }
        self.rows[pr] = pivot_row;
        self.basis[pr] = pc;
    }

    /// Bland's rule: lowest-index improving column enters; ratio ties go to the
    /// lowest-index basic variable.
    fn run(&mut self, allowed: usize) -> Pivoting {
        loop {
            let Some(entering) = (0..allowed).find(|&c| self.obj[c].is_negative()) else {
                return Pivoting::Optimal;
            };
            let mut leaving: Option<(usize, Rat)> = None;
            for r in 0..self.rows.len() {
                let coef = &self.rows[r][entering];
                if !coef.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[r] / coef;
                let better = match &leaving {
                    None => true,
                    Some((lr, best)) => ratio < *best || (ratio == *best && self.basis[r] < self.basis[*lr]),
                };
                if better {
                    leaving = Some((r, ratio));
                }
            }
            match leaving {
                Some((r, _)) => self.pivot(r, entering),
                None => return Pivoting::Unbounded(entering),
            }
        }
    }

    fn values(&self, ncols: usize) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); ncols];
        for (r, &b) in self.basis.iter().enumerate() {
            if b < ncols {
                v[b] = self.rhs[r].clone();
            }
        }
        v
    }
}

fn split_values(v: &[Rat], n: usize) -> RatVec {
    (0..n).map(|j| &v[j] - &v[n + j]).collect()
}

pub fn solve(lp: &LinearProgram) -> Result<LpOutcome> {
    lp.validate()?;
    let n = lp.dim;
    let m_ineq = lp.constraints.len();
    let m = m_ineq + lp.equalities.len();

    // rows of [A -A I ; E -E 0] with sign flips making the right-hand side nonnegative
    let mut sign = Vec::with_capacity(m);
    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    let structural = 2 * n + m_ineq;
    let source_rows = lp
        .constraints
        .iter()
        .map(|c| (&c.row, &c.bound))
        .chain(lp.equalities.iter().map(|e| (&e.row, &e.value)));
    for (k, (row, bound)) in source_rows.enumerate() {
        let s = if bound.is_negative() { -Rat::one() } else { Rat::one() };
        let mut full = vec![Rat::zero(); structural];
        for (j, a) in row.iter().enumerate() {
            if !a.is_zero() {
                full[j] = a * &s;
                full[n + j] = -(a * &s);
            }
        }
        if k < m_ineq {
            full[2 * n + k] = s.clone();
        }
        rows.push(full);
        rhs.push(bound * &s);
        sign.push(s);
    }

    // initial basis: slack where its coefficient is +1, otherwise an artificial
    let mut initial = Vec::with_capacity(m);
    let mut artificial_rows = Vec::new();
    for (k, sk) in sign.iter().enumerate() {
        if k < m_ineq && sk.is_positive() {
            initial.push(2 * n + k);
        } else {
            initial.push(structural + artificial_rows.len());
            artificial_rows.push(k);
        }
    }
    let total = structural + artificial_rows.len();
    for (a, &k) in artificial_rows.iter().enumerate() {
        for (r, row) in rows.iter_mut().enumerate() {
            row.resize(total, Rat::zero());
            if r == k {
                row[structural + a] = Rat::one();
            }
        }
    }
    if artificial_rows.is_empty() {
        for row in rows.iter_mut() {
            row.resize(total, Rat::zero());
        }
    }

    let mut tab = Tableau {
        rows,
        rhs,
        obj: vec![Rat::zero(); total],
        obj_rhs: Rat::zero(),
        basis: initial.clone(),
    };

    if !artificial_rows.is_empty() {
        let mut phase1 = vec![Rat::zero(); total];
        for c in phase1.iter_mut().skip(structural) {
            *c = Rat::one();
        }
        tab.set_costs(&phase1);
        match tab.run(total) {
            Pivoting::Optimal => {}
            Pivoting::Unbounded(_) => unreachable!("phase one objective is bounded below by zero"),
        }
        if (-tab.obj_rhs.clone()).is_positive() {
            // duals of the sign-flipped rows: π_k = c_init − d_init
            let inequality_len = m_ineq;
            let mut y: Vec<Rat> = (0..m)
                .map(|k| {
                    let col = initial[k];
                    let pi = &phase1[col] - &tab.obj[col];
                    -(pi * &sign[k])
                })
                .collect();
            let w = y.split_off(inequality_len);
            let certificate = FarkasCertificate {
                inequality_multipliers: y,
                equality_multipliers: w,
            };
            assert!(certificate.verify(lp), "solver bug: Farkas certificate failed verification");
            return Ok(LpOutcome::Infeasible { certificate });
        }
        // drive zero-level artificials out of the basis, dropping redundant rows
        let mut redundant = Vec::new();
        for r in 0..tab.rows.len() {
            if tab.basis[r] < structural {
                continue;
            }
            match (0..structural).find(|&c| !tab.rows[r][c].is_zero()) {
                Some(c) => tab.pivot(r, c),
                None => redundant.push(r),
            }
        }
        for &r in redundant.iter().rev() {
            tab.rows.remove(r);
            tab.rhs.remove(r);
            tab.basis.remove(r);
        }
        for row in tab.rows.iter_mut() {
            row.truncate(structural);
        }
        tab.obj.truncate(structural);
    }

    if lp.sense == Sense::Feasibility {
        let point = split_values(&tab.values(structural), n);
        assert!(lp.is_feasible(&point), "solver bug: infeasible phase-one point");
        return Ok(LpOutcome::Optimal { point, value: Rat::zero() });
    }

    let direction = if lp.sense == Sense::Maximize { -Rat::one() } else { Rat::one() };
    let mut costs = vec![Rat::zero(); structural];
    for (j, c) in lp.objective.iter().enumerate() {
        costs[j] = c * &direction;
        costs[n + j] = -(c * &direction);
    }
    tab.set_costs(&costs);
    let outcome = match tab.run(structural) {
        Pivoting::Optimal => {
            let point = split_values(&tab.values(structural), n);
            let value = lp.objective.dot(&point);
            assert!(lp.is_feasible(&point), "solver bug: infeasible optimal point");
            assert_eq!(value, -tab.obj_rhs.clone() * &direction, "solver bug: objective mismatch");
            LpOutcome::Optimal { point, value }
        }
        Pivoting::Unbounded(entering) => {
            let point = split_values(&tab.values(structural), n);
            let mut d = vec![Rat::zero(); structural];
            d[entering] = Rat::one();
            for (r, &b) in tab.basis.iter().enumerate() {
                d[b] = -tab.rows[r][entering].clone();
            }
            let ray = split_values(&d, n);
            let gain = lp.objective.dot(&ray) * -&direction;
            assert!(lp.is_feasible(&point), "solver bug: infeasible point on unbounded program");
            assert!(
                lp.is_recession_direction(&ray) && gain.is_positive(),
                "solver bug: invalid unbounded ray"
            );
            LpOutcome::Unbounded { point, ray }
        }
    };
    Ok(outcome)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratlp::rat::{int, rat};

    fn v(c: &[i64]) -> RatVec {
        RatVec::from_ints(c)
    }

    #[test]
    fn bounded_interval_maximum() {
        let mut lp = LinearProgram::maximize(v(&[1]));
        lp.push_le(v(&[1]), int(3)).push_le(v(&[-1]), int(0));
        assert_eq!(lp.solve().unwrap().value(), Some(&int(3)));
    }

    #[test]
    fn contradictory_interval_has_certificate() {
        let mut lp = LinearProgram::feasibility(1);
        lp.push_le(v(&[1]), int(1)).push_le(v(&[-1]), int(-2));
        match lp.solve().unwrap() {
            LpOutcome::Infeasible { certificate } => {
                assert!(certificate.verify(&lp));
                assert_eq!(certificate.inequality_multipliers[0], certificate.inequality_multipliers[1]);
                let y = &certificate.inequality_multipliers[0];
                assert_eq!(certificate.combined_bound(&lp), -y.clone());
            }
            other => panic!("expected infeasible, got {other:?}"),
        }
    }

    #[test]
    fn square_vertex() {
        let mut lp = LinearProgram::maximize(v(&[1, 1]));
        lp.push_le(v(&[1, 0]), int(1))
            .push_le(v(&[-1, 0]), int(1))
            .push_le(v(&[0, 1]), int(1))
            .push_le(v(&[0, -1]), int(1));
        match lp.solve().unwrap() {
            LpOutcome::Optimal { point, value } => {
                assert_eq!(value, int(2));
                assert_eq!(point, v(&[1, 1]));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unbounded_ray_improves() {
        let mut lp = LinearProgram::minimize(v(&[1, -1]));
        lp.push_le(v(&[1, 0]), int(0));
        match lp.solve().unwrap() {
            LpOutcome::Unbounded { ray, .. } => {
                assert!(lp.objective.dot(&ray) < int(0));
                assert!(lp.is_recession_direction(&ray));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn equalities_and_redundant_rows() {
        // x + y = 1 twice, x - y = 0
        let mut lp = LinearProgram::minimize(v(&[1, 0]));
        lp.push_eq(v(&[1, 1]), int(1)).push_eq(v(&[2, 2]), int(2)).push_eq(v(&[1, -1]), int(0));
        match lp.solve().unwrap() {
            LpOutcome::Optimal { point, .. } => assert_eq!(point, RatVec::new(vec![rat(1, 2), rat(1, 2)])),
            other => panic!("{other:?}"),
        }
        let mut bad = LinearProgram::feasibility(2);
        bad.push_eq(v(&[1, 1]), int(1)).push_eq(v(&[1, 1]), int(2));
        match bad.solve().unwrap() {
            LpOutcome::Infeasible { certificate } => assert!(certificate.verify(&bad)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn zero_variable_programs() {
        let mut ok = LinearProgram::maximize(RatVec::zeros(0));
        ok.push_le(RatVec::zeros(0), int(1));
        assert_eq!(ok.solve().unwrap().value(), Some(&int(0)));
        let mut bad = LinearProgram::feasibility(0);
        bad.push_le(RatVec::zeros(0), int(-1));
        assert!(bad.solve().unwrap().is_infeasible());
    }

    #[test]
    fn dimension_mismatch_is_an_input_error() {
        let mut lp = LinearProgram::maximize(v(&[1, 1]));
        lp.push_le(v(&[1]), int(1));
        assert!(matches!(lp.solve(), Err(crate::Error::DimensionMismatch { .. })));
    }

    #[test]
    fn degenerate_cycling_prone_program_terminates() {
        // Beale's classic cycling example, written with explicit nonnegativity.
        let mut lp = LinearProgram::minimize(RatVec::new(vec![rat(-3, 4), int(150), rat(-1, 50), int(6)]));
        lp.push_le(RatVec::new(vec![rat(1, 4), int(-60), rat(-1, 25), int(9)]), int(0))
            .push_le(RatVec::new(vec![rat(1, 2), int(-90), rat(-1, 50), int(3)]), int(0))
            .push_le(v(&[0, 0, 1, 0]), int(1));
        for k in 0..4 {
            lp.push_le(-&RatVec::unit(4, k), int(0));
        }
        assert_eq!(lp.solve().unwrap().value(), Some(&rat(-1, 20)));
    }
}
