//! Brute-force vertex and facet enumeration for small dimensions.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_traits::{Signed, Zero};

use super::linalg::{nullspace, solve, Matrix};
use super::rat::{Rat, RatVec};
use super::simplex::Constraint;

/// Vertices of `{x : row·x ≤ bound}` by solving every `dim`-subset of
/// constraints as equalities. Returns them sorted and deduplicated.
pub fn vertices(dim: usize, constraints: &[Constraint]) -> Vec<RatVec> {
    let mut found = BTreeSet::new();
    if dim == 0 {
        return Vec::new();
    }
    for subset in (0..constraints.len()).combinations(dim) {
        let rows: Vec<RatVec> = subset.iter().map(|&k| constraints[k].row.clone()).collect();
        let a = Matrix::from_rows(dim, rows);
        if a.rank() < dim {
            continue;
        }
        let b: RatVec = subset.iter().map(|&k| constraints[k].bound.clone()).collect();
        let Some(x) = solve(&a, &b) else { continue };
        if constraints.iter().all(|c| c.row.dot(&x) <= c.bound) {
            found.insert(x);
        }
    }
    found.into_iter().collect()
}

/// Facet inequalities `normal·x ≤ offset` of the hull of full-dimensional `points`.
/// Each facet is scaled so that its first nonzero normal entry has magnitude one.
pub fn hull_facets(dim: usize, points: &[RatVec]) -> Vec<Constraint> {
    let mut facets = BTreeSet::new();
    for subset in (0..points.len()).combinations(dim) {
        // unknowns (normal, offset): normal·p - offset = 0 for p in the subset
        let rows = subset
            .iter()
            .map(|&k| points[k].extended(&[-Rat::from_integer(1.into())]))
            .collect();
        let ns = nullspace(&Matrix::from_rows(dim + 1, rows));
        if ns.len() != 1 {
            continue;
        }
        let sol = &ns[0];
        let normal: RatVec = sol.coords()[..dim].iter().cloned().collect();
        if normal.is_zero() {
            continue;
        }
        let offset = sol[dim].clone();
        let above = points.iter().any(|p| normal.dot(p) > offset);
        let below = points.iter().any(|p| normal.dot(p) < offset);
        let (normal, offset) = match (above, below) {
            (true, true) => continue,
            (true, false) => (-&normal, -offset),
            _ => (normal, offset),
        };
        let lead = normal.iter().find(|c| !c.is_zero()).expect("nonzero normal").abs();
        let scale = lead.recip();
        facets.insert((normal.scale(&scale), offset * scale));
    }
    facets
        .into_iter()
        .map(|(row, bound)| Constraint { row, bound })
        .collect()
}
