use asymspace_core::bip::{common_point, mixed_bip_report, CommonPoint, MixedBallFamily, PairFailure, PairWitness, Verdict};
use asymspace_core::extend::{
    extend_coordinatewise, extend_operator, necessity_pipeline, norm_one_projection, verify_extension, ExtensionProblem,
    ExtensionResult,
};
use asymspace_core::geometry::{embed_into_ellinfty, pair_intersection_witness, Ball, OperatorNorm, PolyAsymNorm, Subspace};
use asymspace_core::ratlp::{int, CertifiedEmpty, Constraint, LinearProgram, LpOutcome, Rat, RatVec};
use asymspace_core::Error;

use crate::document::{
    point, points, radius, to_family, BallIntersectTask, OperatorDocument, SpaceDocument, TaskDocument,
    VectorText,
};
use crate::error::CliError;
use crate::plot::{Region, Scene};
use crate::report::{record, Field, Report};

pub struct Outcome {
    pub report: Report,
    /// what `--out` draws; `None` when the task has nothing planar to show
    pub scene: Option<Scene>,
}

pub fn run(doc: &TaskDocument, seed: u64) -> Result<Outcome, CliError> {
    match doc {
        TaskDocument::NormCheck(t) => norm_check(&t.space, &t.points),
        TaskDocument::BallIntersect(BallIntersectTask { space, forward, backward }) => {
            let norm = space.to_norm("space")?;
            let dim = norm.dim();
            let x = point("forward.center", &forward.center, dim)?;
            let r = radius("forward.radius", &forward.radius)?;
            let y = point("backward.center", &backward.center, dim)?;
            let s = radius("backward.radius", &backward.radius)?;
            ball_intersect(&norm, x, r, y, s)
        }
        TaskDocument::BipCheck(t) => Ok(bip_check(&to_family(t.space.to_norm("space")?, &t.family)?)),
        TaskDocument::OpNorm(t) => op_norm(&t.operator),
        TaskDocument::Extend(t) => extend(&t.operator),
        TaskDocument::Embed(t) => embed(&t.space.to_norm("space")?),
        TaskDocument::Project(t) => {
            let norm = t.space.to_norm("space")?;
            let basis = points("subspace", &t.subspace, norm.dim())?;
            let y = Subspace::new(norm.dim(), basis).map_err(|e| CliError::field("subspace", e))?;
            project(&norm, &y)
        }
        TaskDocument::NecessityDemo(t) => necessity_demo(&to_family(t.space.to_norm("space")?, &t.family)?, seed),
    }
}

pub fn certificate(empty: &CertifiedEmpty) -> Field {
    let cert = &empty.certificate;
    record([
        ("inequality_multipliers", Field::Vector(RatVec::new(cert.inequality_multipliers.clone()))),
        ("equality_multipliers", Field::Vector(RatVec::new(cert.equality_multipliers.clone()))),
        ("combined_row", Field::Vector(cert.combined_row(&empty.program))),
        ("combined_bound", Field::Scalar(cert.combined_bound(&empty.program))),
        ("verified", Field::Flag(empty.verify())),
    ])
}

fn vectors(items: &[RatVec]) -> Field {
    Field::List(items.iter().cloned().map(Field::Vector).collect())
}

fn witnesses(ws: &[PairWitness]) -> Field {
    Field::List(
        ws.iter()
            .map(|w| record([("from", Field::Count(w.from)), ("to", Field::Count(w.to)), ("point", Field::Vector(w.point.clone()))]))
            .collect(),
    )
}

fn failures(fs: &[PairFailure]) -> Field {
    Field::List(
        fs.iter()
            .map(|f| {
                record([
                    ("from", Field::Count(f.from)),
                    ("to", Field::Count(f.to)),
                    ("distance", Field::Scalar(f.distance.clone())),
                    ("budget", Field::Scalar(f.budget.clone())),
                ])
            })
            .collect(),
    )
}

fn unit_ball(norm: &PolyAsymNorm) -> Region {
    let ball = Ball::forward(norm, RatVec::zeros(norm.dim()), int(1)).expect("radius one is valid");
    Region { name: "unit_ball".into(), constraints: ball.constraints() }
}

fn unit_ball_scene(norm: &PolyAsymNorm) -> Scene {
    Scene { regions: vec![unit_ball(norm)], anchors: vec![RatVec::zeros(norm.dim())], ..Scene::default() }
}

/// Entry `i` drawn as the intersection of its forward and backward balls.
fn family_scene(fam: &MixedBallFamily) -> Scene {
    let q = fam.norm();
    let regions = fam
        .entries()
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let mut constraints = Ball::forward(q, e.center.clone(), e.forward_radius.clone()).expect("validated").constraints();
            constraints.extend(Ball::backward(q, e.center.clone(), e.backward_radius.clone()).expect("validated").constraints());
            Region { name: format!("ball_{i}"), constraints }
        })
        .collect();
    Scene { regions, anchors: fam.entries().iter().map(|e| e.center.clone()).collect(), ..Scene::default() }
}

fn norm_check(space: &SpaceDocument, pts: &[VectorText]) -> Result<Outcome, CliError> {
    let norm = space.to_norm("space")?;
    let pts = points("points", pts, norm.dim())?;
    let values = pts
        .iter()
        .map(|x| {
            record([
                ("point", Field::Vector(x.clone())),
                ("value", Field::Scalar(norm.value(x))),
                ("conjugate_value", Field::Scalar(norm.conjugate().value(x))),
            ])
        })
        .collect();
    let mut report = Report::new("norm-check", "valid", false)
        .with("dimension", Field::Count(norm.dim()))
        .with("generators", vectors(norm.generators()))
        .with("t1", Field::Flag(norm.is_t1()))
        .with("asymmetric_sup_form", Field::Flag(norm.is_asym_sup_form()))
        .with("symmetrized_generators", vectors(norm.symmetrize().generators()));
    if let Some(name) = &space.name {
        report.push("name", Field::Text(name.clone()));
    }
    report.push("values", Field::List(values));
    Ok(Outcome { report, scene: Some(unit_ball_scene(&norm)) })
}

fn ball_intersect(norm: &PolyAsymNorm, x: RatVec, r: Rat, y: RatVec, s: Rat) -> Result<Outcome, CliError> {
    let forward = Ball::forward(norm, x.clone(), r.clone())?;
    let backward = Ball::backward(norm, y.clone(), s.clone())?;
    let mut scene = Scene {
        regions: vec![
            Region { name: "forward_ball".into(), constraints: forward.constraints() },
            Region { name: "backward_ball".into(), constraints: backward.constraints() },
        ],
        anchors: vec![x.clone(), y.clone()],
        ..Scene::default()
    };
    let distance = norm.value(&(&y - &x));
    let report = match pair_intersection_witness(&x, &r, &y, &s, norm)? {
        Some(w) => {
            scene.marker = Some(w.clone());
            scene.note = Some("common point".into());
            Report::new("ball-intersect", "intersect", false).with("distance", Field::Scalar(distance)).with("witness", Field::Vector(w))
        }
        None => {
            let mut lp = LinearProgram::feasibility(norm.dim());
            for Constraint { row, bound } in forward.constraints().into_iter().chain(backward.constraints()) {
                lp.push_le(row, bound);
            }
            let LpOutcome::Infeasible { certificate: cert } = lp.solve()? else {
                unreachable!("disjoint balls give an infeasible program")
            };
            scene.note = Some("empty intersection".into());
            Report::new("ball-intersect", "disjoint", true)
                .with("distance", Field::Scalar(distance))
                .with("budget", Field::Scalar(&r + &s))
                .with("certificate", certificate(&CertifiedEmpty { program: lp, certificate: cert }))
        }
    };
    Ok(Outcome { report, scene: Some(scene) })
}

fn bip_check(fam: &MixedBallFamily) -> Outcome {
    let mut scene = family_scene(fam);
    let verdict = mixed_bip_report(fam);
    let mut report = Report::new("bip-check", verdict.label(), verdict.is_violated()).with("entries", Field::Count(fam.len()));
    match &verdict {
        Verdict::PremiseFails { failures: fs } => {
            report.push("failed_pairs", failures(fs));
            if let CommonPoint::Point(p) = common_point(fam) {
                scene.marker = Some(p);
            }
            scene.note = Some("pairwise condition fails".into());
        }
        Verdict::BipHolds { point, witnesses: ws } => {
            report.push("common_point", Field::Vector(point.clone()));
            report.push("pairwise_witnesses", witnesses(ws));
            scene.marker = Some(point.clone());
            scene.note = Some("common point".into());
        }
        Verdict::BipViolated { witnesses: ws, emptiness } => {
            report.push("pairwise_witnesses", witnesses(ws));
            report.push("certificate", certificate(emptiness));
            scene.note = Some("empty intersection".into());
        }
    }
    Outcome { report, scene: Some(scene) }
}

fn op_norm(doc: &OperatorDocument) -> Result<Outcome, CliError> {
    let op = doc.to_operator()?;
    let mut report = match op.operator_norm() {
        OperatorNorm::Finite(value) => Report::new("op-norm", "finite", false).with("value", Field::Scalar(value)),
        OperatorNorm::Unbounded => Report::new("op-norm", "unbounded", false).with("value", Field::Text("unbounded".into())),
    };
    report.push("total", Field::Flag(op.is_total()));
    Ok(Outcome { report, scene: Some(unit_ball_scene(op.source())) })
}

fn extend(doc: &OperatorDocument) -> Result<Outcome, CliError> {
    let op = doc.to_operator()?;
    let prob = match &doc.bound {
        Some(b) => ExtensionProblem::with_bound(op, radius("operator.bound", b)?)?,
        None => ExtensionProblem::new(op)?,
    };
    let result = extend_operator(&prob)?;
    let mut report = Report::new("extend", result.label(), !result.is_extended()).with("bound", Field::Scalar(prob.bound().clone()));
    match &result {
        ExtensionResult::Extended { matrix, .. } => {
            report.push("matrix", Field::Matrix(matrix.clone()));
            report.push("verified", Field::Flag(verify_extension(&prob, &result)));
            if prob.target().is_asym_sup_form() {
                report.push("coordinatewise_matrix", Field::Matrix(extend_coordinatewise(&prob)?));
            }
        }
        ExtensionResult::NotExtendable(empty) => report.push("certificate", certificate(empty)),
    }
    Ok(Outcome { report, scene: Some(unit_ball_scene(prob.source())) })
}

fn embed(norm: &PolyAsymNorm) -> Result<Outcome, CliError> {
    let op = embed_into_ellinfty(norm);
    let matrix = op.full_matrix().expect("the embedding is total");
    let report = Report::new("embed", "embedded", false)
        .with("target_dimension", Field::Count(matrix.nrows()))
        .with("matrix", Field::Matrix(matrix))
        .with("operator_norm", Field::Text(op.operator_norm().to_string()));
    Ok(Outcome { report, scene: Some(unit_ball_scene(norm)) })
}

fn project(norm: &PolyAsymNorm, y: &Subspace) -> Result<Outcome, CliError> {
    let found = norm_one_projection(norm, y)?;
    let status = if found.result.is_extended() { "projection-found" } else { "no-projection" };
    let mut report = Report::new("project", status, !found.result.is_extended())
        .with("subspace", vectors(y.basis()));
    match (&found.projection, &found.result) {
        (Some(p), _) => report.push("projection", Field::Matrix(p.clone())),
        (None, ExtensionResult::NotExtendable(empty)) => report.push("certificate", certificate(empty)),
        (None, ExtensionResult::Extended { .. }) => unreachable!("an extension yields a projection"),
    }
    Ok(Outcome { report, scene: Some(unit_ball_scene(norm)) })
}

fn necessity_demo(fam: &MixedBallFamily, seed: u64) -> Result<Outcome, CliError> {
    let mut scene = family_scene(fam);
    let report = match necessity_pipeline(fam, seed) {
        Ok(nr) => {
            scene.note = Some("empty intersection".into());
            let table = &nr.minimal.table;
            let anchors = (0..table.len())
                .map(|k| {
                    record([
                        ("point", Field::Vector(table.points()[k].clone())),
                        ("rho1", Field::Scalar(table.rho1()[k].clone())),
                        ("rho2", Field::Scalar(table.rho2()[k].clone())),
                    ])
                })
                .collect();
            let mut report = Report::new("necessity-demo", "non-injective", true)
                .with("minimal_pair", Field::List(anchors))
                .with("passes", Field::Count(nr.minimal.passes))
                .with("mu_generators", vectors(nr.mu_norm.generators()))
                .with("certificate", certificate(&nr.emptiness));
            if let ExtensionResult::NotExtendable(empty) = &nr.projection.result {
                report.push("projection_certificate", certificate(empty));
            }
            report.push("verified", Field::Flag(nr.verify()));
            report
        }
        Err(Error::PipelineRefused(reason) | Error::UnsupportedNorm(reason)) => {
            Report::new("necessity-demo", "refused", false).with("reason", Field::Text(reason))
        }
        Err(e @ Error::UnusableWitness(_)) => {
            Report::new("necessity-demo", "unusable-witness", false).with("reason", Field::Text(e.to_string()))
        }
        Err(e) => return Err(e.into()),
    };
    Ok(Outcome { report, scene: Some(scene) })
}
