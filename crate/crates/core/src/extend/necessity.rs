use super::projection::{norm_one_projection, NormOneProjection};
use crate::bip::{
    build_mu_norm, extend_pair_globally, minimal_pair, mixed_bip_report, mixed_intersection_program, verification_pairs,
    FinitePairTable, MinimalPair, MixedBall, MixedBallFamily, MuNorm, PiecewiseGaugePair,
};
use crate::error::{Error, Result};
use crate::geometry::{PolyAsymNorm, Subspace};
use crate::ratlp::{CertifiedEmpty, LpOutcome, Rat, RatVec};
use crate::sample::Sampler;

/// Everything the non-injectivity argument produces for one family.
#[derive(Debug, Clone)]
pub struct NecessityReport {
    /// distinct centers with `r₁ = min s_i`, `r₂ = min r_i` over equal centers
    pub initial: FinitePairTable,
    pub minimal: MinimalPair,
    pub pair: PiecewiseGaugePair,
    pub mu: MuNorm,
    /// `μ` as a maximum of linear functionals on `ℝ^{n+1}`
    pub mu_norm: PolyAsymNorm,
    /// `{y : q(x - y) ≤ ρ₁(x), q(y - x) ≤ ρ₂(x), x anchor}` is empty
    pub emptiness: CertifiedEmpty,
    /// the failed search for a norm-one projection of `(ℝ^{n+1}, μ)` onto `ℝ^n`
    pub projection: NormOneProjection,
}

impl NecessityReport {
    /// Re-checks both certificates.
    pub fn verify(&self) -> bool {
        self.emptiness.verify()
            && match &self.projection.result {
                crate::extend::ExtensionResult::NotExtendable(c) => c.verify(),
                crate::extend::ExtensionResult::Extended { .. } => false,
            }
    }
}

fn anchor_table(fam: &MixedBallFamily) -> Result<FinitePairTable> {
    let mut points: Vec<RatVec> = Vec::new();
    let mut first: Vec<Rat> = Vec::new();
    let mut second: Vec<Rat> = Vec::new();
    for e in fam.entries() {
        match points.iter().position(|p| p == &e.center) {
            Some(k) => {
                first[k] = first[k].clone().min(e.backward_radius.clone());
                second[k] = second[k].clone().min(e.forward_radius.clone());
            }
            None => {
                points.push(e.center.clone());
                first.push(e.backward_radius.clone());
                second.push(e.forward_radius.clone());
            }
        }
    }
    FinitePairTable::new(points, first, second)
}

/// Turns a family violating the mixed intersection property into a certified
/// proof that `(ℝ^n, q)` admits no norm-one projection from a one-dimensional
/// enlargement, so is not injective.
pub fn necessity_pipeline(fam: &MixedBallFamily, seed: u64) -> Result<NecessityReport> {
    let verdict = mixed_bip_report(fam);
    if !verdict.is_violated() {
        return Err(Error::PipelineRefused(format!("verdict is {}", verdict.label())));
    }
    let q = fam.norm();
    if !q.is_t1() {
        return Err(Error::UnsupportedNorm("norm is not T1: q(x) = 0 for some x ≠ 0".into()));
    }
    let n = q.dim();

    let initial = anchor_table(fam)?;
    if let Some(v) = initial.domination_violation(q) {
        return Err(Error::InvalidInput(format!("anchor radii violate the domination condition: {v:?}")));
    }
    let minimal = minimal_pair(
        initial.points().to_vec(),
        q,
        initial.rho1().to_vec(),
        initial.rho2().to_vec(),
    )?;
    if let Some(k) = minimal.table.degenerate_point() {
        return Err(Error::UnusableWitness(minimal.table.points()[k].to_string()));
    }
    let table = &minimal.table;

    let pair = extend_pair_globally(table, q)?;
    let mut samples = verification_pairs(n, 24, seed);
    for (i, x) in table.points().iter().enumerate() {
        for y in &table.points()[i..] {
            samples.push((x.clone(), y.clone()));
        }
    }
    let mu = build_mu_norm(q, pair.clone(), &samples)?;
    let mu_norm = mu.to_poly_norm()?;
    let mut sampler = Sampler::new(seed ^ 0x5eed);
    for _ in 0..24 {
        let y = sampler.vector(n + 1);
        assert_eq!(mu_norm.value(&y), mu.eval(&y)?, "polyhedral form of μ disagrees at {y}");
    }

    let entries: Vec<MixedBall> = table
        .points()
        .iter()
        .zip(table.rho1().iter().zip(table.rho2()))
        .map(|(x, (r1, r2))| MixedBall::new(x.clone(), r2.clone(), r1.clone()))
        .collect();
    let program = mixed_intersection_program(q, &entries);
    let emptiness = match program.solve()? {
        LpOutcome::Infeasible { certificate } => CertifiedEmpty { program, certificate },
        _ => unreachable!("the lowered balls sit inside a family with empty intersection"),
    };
    assert!(emptiness.verify());

    let base = Subspace::new(n + 1, (0..n).map(|k| RatVec::unit(n + 1, k)).collect())?;
    let projection = norm_one_projection(&mu_norm, &base)?;
    assert!(
        !projection.result.is_extended(),
        "a norm-one projection would put P(ξ) in an empty intersection"
    );
    Ok(NecessityReport { initial, minimal, pair, mu, mu_norm, emptiness, projection })
}
