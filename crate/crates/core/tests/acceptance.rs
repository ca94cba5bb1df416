//! Exit-gate checks, one line per criterion. All comparisons are exact
//! rational equalities or inequalities; the only numeric tolerances are
//! the wall-clock budgets below.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use asymspace_core::bip::{
    build_mu_norm, common_point, minimal_pair, mixed_bip_report, pairwise_mixed_check, pass_cap, verification_pairs,
    CommonPoint, GaugeFunction, PiecewiseGaugePair, TriangleCase,
};
use asymspace_core::extend::{
    extend_coordinatewise, extend_operator, necessity_pipeline, norm_one_projection, ExtensionProblem, ExtensionResult,
};
use asymspace_core::geometry::{
    embed_into_ellinfty, pair_intersection_witness, Ball, OperatorNorm, PartialOperator, PolyAsymNorm, Subspace,
};
use asymspace_core::ratlp::{int, rat, LinearProgram, LpOutcome, Matrix, Rat, RatVec};
use asymspace_core::sample::Sampler;
use asymspace_core::Error;
use common::{
    abs_line, corpus, family, hexagon_triangle, lasts, pairwise_passing_family, random_norm, random_partial_operator,
    random_table,
};
use num_traits::{Signed, Zero};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn sorted_generators(p: &PolyAsymNorm) -> Vec<RatVec> {
    let mut g = p.generators().to_vec();
    g.sort();
    g
}

fn axiom_suite() -> Outcome {
    let mut s = Sampler::new(101);
    let mut checked = 0;
    for c in corpus() {
        let (p, n) = (&c.norm, c.norm.dim());
        let (conj, sym) = (p.conjugate(), p.symmetrize());
        ensure!(sorted_generators(&conj.conjugate()) == sorted_generators(p), "{}: conjugation is not an involution", c.name);
        ensure!(sorted_generators(&sym.conjugate()) == sorted_generators(&sym), "{}: symmetrization is not symmetric", c.name);
        for _ in 0..1000 {
            let (x, y, a) = (s.vector(n), s.vector(n), s.nonnegative());
            let px = p.value(&x);
            ensure!(px == c.closed.eval(&x), "{}: value at {x}", c.name);
            ensure!(!px.is_negative(), "{}: negative at {x}", c.name);
            ensure!(x.is_zero() || px.is_positive() || p.value(&-&x).is_positive(), "{}: vanishes both ways at {x}", c.name);
            ensure!(p.value(&x.scale(&a)) == &a * &px, "{}: homogeneity at {x}", c.name);
            ensure!(p.value(&(&x + &y)) <= &px + p.value(&y), "{}: subadditivity at {x}, {y}", c.name);
            ensure!(conj.value(&x) == p.value(&-&x), "{}: conjugate at {x}", c.name);
            ensure!(sym.value(&x) == px.clone().max(p.value(&-&x)), "{}: symmetrization at {x}", c.name);
            checked += 1;
        }
    }
    Ok(format!("{checked} vectors over 7 norms"))
}

fn witness_round_trip() -> Outcome {
    let mut s = Sampler::new(102);
    let (mut meeting, mut apart) = (0, 0);
    for c in corpus() {
        let (q, n) = (&c.norm, c.norm.dim());
        let conj = q.conjugate();
        for _ in 0..500 {
            let (y1, y2, r1, r2) = (s.vector(n), s.vector(n), s.nonnegative(), s.positive());
            let forward = Ball::forward(q, y1.clone(), r1.clone()).unwrap();
            let backward = Ball::backward(q, y2.clone(), r2.clone()).unwrap();
            let predicted = q.value(&(&y2 - &y1)) <= &r1 + &r2;
            match pair_intersection_witness(&y1, &r1, &y2, &r2, q).unwrap() {
                Some(w) => {
                    ensure!(predicted, "{}: witness beyond the radius budget", c.name);
                    ensure!(forward.contains(&w).unwrap() && backward.contains(&w).unwrap(), "{}: bad witness {w}", c.name);
                    let w2 = pair_intersection_witness(&y2, &r2, &y1, &r1, &conj).unwrap();
                    let w2 = w2.ok_or_else(|| format!("{}: conjugate witness missing", c.name))?;
                    ensure!(
                        q.value(&(&y2 - &w2)) <= r2 && q.value(&(&w2 - &y1)) <= r1,
                        "{}: bad conjugate witness {w2}",
                        c.name
                    );
                    meeting += 1;
                }
                None => {
                    ensure!(!predicted, "{}: no witness within budget", c.name);
                    let mut lp = LinearProgram::feasibility(n);
                    for k in forward.constraints().into_iter().chain(backward.constraints()) {
                        lp.push_le(k.row, k.bound);
                    }
                    match lp.solve().unwrap() {
                        LpOutcome::Infeasible { certificate } => ensure!(certificate.verify(&lp), "{}: bad certificate", c.name),
                        _ => return Err(format!("{}: balls meet although the budget fails", c.name)),
                    }
                    apart += 1;
                }
            }
        }
    }
    Ok(format!("{meeting} meeting pairs witnessed, {apart} disjoint pairs certified"))
}

fn hexagon_counterexample() -> Outcome {
    let fam = hexagon_triangle();
    ensure!(pairwise_mixed_check(&fam).is_empty(), "hexagon triangle fails pairwise");
    match common_point(&fam) {
        CommonPoint::Empty(e) => ensure!(e.verify(), "certificate does not verify"),
        CommonPoint::Point(p) => return Err(format!("hexagon triangle met at {p}")),
    }
    let square = family(PolyAsymNorm::ell_infty(2), &[(&[0, 0], 1, 1), (&[2, 0], 1, 1), (&[0, 2], 1, 1)]);
    match common_point(&square) {
        CommonPoint::Point(p) => {
            ensure!(square.contains(&p).unwrap(), "reported point {p} is outside");
            Ok(format!("hexagon empty with certificate, max-norm point {p}"))
        }
        CommonPoint::Empty(_) => Err("max-norm triangle reported empty".into()),
    }
}

fn sup_type_bip() -> Outcome {
    // arbitrary forward/backward radii under the asymmetric sup norm; equal
    // radii under the symmetric max norm, which fails the mixed property otherwise
    let mut s = Sampler::new(104);
    let mut count = 0;
    for round in 0..240 {
        let dim = 1 + round % 4;
        let balanced = round % 4 == 3;
        let norm = if balanced { PolyAsymNorm::ell_infty(dim) } else { PolyAsymNorm::asym_sup(dim) };
        let balls = 2 + s.index(7);
        let fam = pairwise_passing_family(&mut s, &norm, balls, balanced);
        ensure!(mixed_bip_report(&fam).holds(), "round {round}: pairwise-passing family without common point");
        count += 1;
    }
    let unbalanced = family(abs_line(), &[(&[0], 4, 1), (&[5], 4, 1)]);
    ensure!(mixed_bip_report(&unbalanced).is_violated(), "unbalanced max-norm family unexpectedly meets");
    Ok(format!("{count} families meet (180 asymmetric sup, 60 balanced max)"))
}

fn extension_engine() -> Outcome {
    let mut s = Sampler::new(105);
    let q = PolyAsymNorm::asym_sup(3);
    let norm_of = |m: &Matrix, p: &PolyAsymNorm| PartialOperator::total(m, p.clone(), q.clone()).unwrap().operator_norm();
    for round in 0..100 {
        let p = random_norm(&mut s, 4, 2);
        let t = random_partial_operator(&mut s, &p, &q);
        let prob = ExtensionProblem::new(t.clone()).map_err(|e| format!("round {round}: {e}"))?;
        let beta = OperatorNorm::Finite(prob.bound().clone());
        let ExtensionResult::Extended { matrix, .. } = extend_operator(&prob).unwrap() else {
            return Err(format!("round {round}: not extendable"));
        };
        let coords = extend_coordinatewise(&prob).map_err(|e| format!("round {round}: {e}"))?;
        for m in [&matrix, &coords] {
            let agrees = t.domain().basis().iter().zip(t.images()).all(|(b, y)| &m.apply(b) == y);
            ensure!(agrees, "round {round}: extension differs from T on Z");
            ensure!(norm_of(m, &p) == beta, "round {round}: norm changed");
        }
    }
    Ok("100 problems extended by both engines with equal norms".into())
}

fn embedding_isometry() -> Outcome {
    let mut s = Sampler::new(106);
    for c in corpus() {
        let e = embed_into_ellinfty(&c.norm);
        for _ in 0..500 {
            let x = s.vector(c.norm.dim());
            let image = e.apply(&x).unwrap();
            ensure!(e.target().value(&image) == c.closed.eval(&x), "{}: not isometric at {x}", c.name);
        }
    }
    Ok("3500 vectors".into())
}

fn minimal_pairs() -> Outcome {
    let mut s = Sampler::new(107);
    let norms: Vec<PolyAsymNorm> = corpus().into_iter().map(|c| c.norm).chain([abs_line()]).collect();
    let mut max_passes = 0;
    for round in 0..60 {
        let q = &norms[round % norms.len()];
        let size = 1 + s.index(6);
        let (points, r1, r2) = random_table(&mut s, q, size);
        let out = minimal_pair(points.clone(), q, r1.clone(), r2.clone()).map_err(|e| format!("round {round}: {e}"))?;
        ensure!(out.passes <= pass_cap(size), "round {round}: {} passes", out.passes);
        max_passes = max_passes.max(out.passes);
        let (f, g) = (out.table.rho1(), out.table.rho2());
        for i in 0..size {
            let mut want_f = Rat::zero();
            let mut want_g = Rat::zero();
            for j in (0..size).filter(|&j| j != i) {
                want_f = want_f.max(q.value(&(&points[i] - &points[j])) - &g[j]);
                want_g = want_g.max(q.value(&(&points[j] - &points[i])) - &f[j]);
            }
            ensure!(f[i] == want_f && g[i] == want_g, "round {round}: not a fixed point at {i}");
            ensure!(f[i] <= r1[i] && g[i] <= r2[i], "round {round}: not below the input at {i}");
            for j in 0..size {
                let (ij, ji) = (q.value(&(&points[j] - &points[i])), q.value(&(&points[i] - &points[j])));
                ensure!(&f[j] + &g[i] >= ij, "round {round}: (a) at {i}, {j}");
                ensure!(&f[j] - &f[i] <= ij, "round {round}: (b1) at {i}, {j}");
                ensure!(&g[j] - &g[i] <= ji, "round {round}: (b2) at {i}, {j}");
            }
        }
    }
    Ok(format!("60 configurations, at most {max_passes} passes"))
}

fn mu_norm() -> Outcome {
    let abs = abs_line();
    let g = GaugeFunction::norm_plus(&abs, &rat(1, 2)).unwrap();
    let pair = PiecewiseGaugePair::new(abs.clone(), g.clone(), g).unwrap();
    let mu = build_mu_norm(&abs, pair, &verification_pairs(1, 60, 108)).map_err(|e| e.to_string())?;
    let mut s = Sampler::new(108);
    for _ in 0..120 {
        let y = s.vector(2);
        let expected = y[0].abs() + y[1].abs() * rat(1, 2);
        ensure!(mu.eval(&y).unwrap() == expected, "closed form fails at {y}");
    }
    let hexagon = necessity_pipeline(&hexagon_triangle(), 108).map_err(|e| e.to_string())?.mu;
    let line = necessity_pipeline(&family(abs.clone(), &[(&[0], 4, 1), (&[5], 4, 1)]), 108).map_err(|e| e.to_string())?.mu;
    let mut triples = 0;
    for glued in [&mu, &hexagon, &line] {
        let n = glued.base().dim();
        for case in TriangleCase::ALL {
            for _ in 0..20 {
                let (t1, t2) = lasts(&mut s, case);
                ensure!(TriangleCase::classify(&t1, &t2) == case, "sampler missed {case:?}");
                let y1 = s.vector(n).extended(&[t1]);
                let y2 = s.vector(n).extended(&[t2]);
                let lhs = glued.eval(&(&y1 + &y2)).unwrap();
                ensure!(lhs <= glued.eval(&y1).unwrap() + glued.eval(&y2).unwrap(), "{case:?} fails at {y1}, {y2}");
                triples += 1;
            }
        }
    }
    Ok(format!("closed form on 120 samples, {triples} triangle triples over 8 cases"))
}

fn non_injectivity_certificate() -> Outcome {
    let report = necessity_pipeline(&hexagon_triangle(), 109).map_err(|e| e.to_string())?;
    ensure!(report.minimal.table.rho1() == [int(1), int(1), int(1)], "unexpected first minimal table");
    ensure!(report.minimal.table.rho2() == [int(1), int(1), int(1)], "unexpected second minimal table");
    ensure!(report.mu_norm.dim() == 3, "glued space is not three-dimensional");
    ensure!(report.emptiness.verify(), "emptiness certificate does not verify");
    let plane = Subspace::new(3, vec![RatVec::unit(3, 0), RatVec::unit(3, 1)]).unwrap();
    let projection = norm_one_projection(&report.mu_norm, &plane).map_err(|e| e.to_string())?;
    match &projection.result {
        ExtensionResult::NotExtendable(c) => ensure!(c.verify(), "projection certificate does not verify"),
        ExtensionResult::Extended { .. } => return Err("norm-one projection found".into()),
    }
    ensure!(report.verify(), "report fails its own verification");
    let square = family(PolyAsymNorm::ell_infty(2), &[(&[0, 0], 1, 1), (&[2, 0], 1, 1), (&[0, 2], 1, 1)]);
    match necessity_pipeline(&square, 109) {
        Err(Error::PipelineRefused(_)) => {}
        other => return Err(format!("max-norm family not refused: {other:?}")),
    }
    let mu_generators = report.mu_norm.generators().len();
    Ok(format!("certificates verify, glued norm has {mu_generators} generators, max-norm family refused"))
}

struct Criterion {
    number: u32,
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

/// Runs without the libtest harness so the per-criterion lines always print.
fn main() {
    let secs = Duration::from_secs;
    let criteria = [
        Criterion { number: 1, name: "norm axioms", budget: secs(10), run: axiom_suite },
        Criterion { number: 2, name: "pair witness round trip", budget: secs(5), run: witness_round_trip },
        Criterion { number: 3, name: "hexagon counterexample", budget: secs(1), run: hexagon_counterexample },
        Criterion { number: 4, name: "sup-type mixed intersection", budget: secs(30), run: sup_type_bip },
        Criterion { number: 5, name: "extension engine", budget: secs(60), run: extension_engine },
        Criterion { number: 6, name: "embedding isometry", budget: secs(5), run: embedding_isometry },
        Criterion { number: 7, name: "minimal pairs", budget: secs(10), run: minimal_pairs },
        Criterion { number: 8, name: "glued norm", budget: secs(10), run: mu_norm },
        Criterion { number: 9, name: "non-injectivity certificate", budget: secs(5), run: non_injectivity_certificate },
    ];
    let mut failed = Vec::new();
    for c in &criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(_) if elapsed > c.budget => Err(format!("over budget ({:.2}s > {}s)", elapsed.as_secs_f64(), c.budget.as_secs())),
            other => other,
        };
        let (status, detail) = match &outcome {
            Ok(d) => ("PASS", d.as_str()),
            Err(d) => ("FAIL", d.as_str()),
        };
        println!(
            "criterion {} [{}]: {status} in {:.2}s (budget {}s): {detail}",
            c.number,
            c.name,
            elapsed.as_secs_f64(),
            c.budget.as_secs()
        );
        if outcome.is_err() {
            failed.push(c.number);
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}
