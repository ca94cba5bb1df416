mod common;

use asymspace_core::extend::{
    extend_coordinatewise, extend_functional_fully, extend_operator, fiber_distances, necessity_pipeline,
    norm_one_projection, one_step_operator_extension, ExtensionProblem,
};
use asymspace_core::geometry::{embed_into_ellinfty, OperatorNorm, PartialOperator, PolyAsymNorm, Subspace};
use asymspace_core::ratlp::{hull_membership, Matrix, Rat, RatVec};
use asymspace_core::sample::Sampler;
use common::{abs_line, family, hexagon_triangle, random_norm, random_partial_operator, random_subspace};
use num_traits::{One, Zero};

fn norm_of(m: &Matrix, p: &PolyAsymNorm, q: &PolyAsymNorm) -> OperatorNorm {
    PartialOperator::total(m, p.clone(), q.clone()).unwrap().operator_norm()
}

fn agrees_on_domain(m: &Matrix, t: &PartialOperator) -> bool {
    t.domain().basis().iter().zip(t.images()).all(|(b, y)| &m.apply(b) == y)
}

#[test]
fn both_engines_extend_into_sup_targets() {
    let mut s = Sampler::new(31);
    for _ in 0..30 {
        let p = random_norm(&mut s, 4, 2);
        let q = PolyAsymNorm::asym_sup(3);
        let prob = ExtensionProblem::new(random_partial_operator(&mut s, &p, &q)).unwrap();
        let beta = OperatorNorm::Finite(prob.bound().clone());
        let lp = extend_operator(&prob).unwrap();
        let lp_matrix = lp.matrix().expect("sup targets are injective");
        assert!(agrees_on_domain(lp_matrix, prob.operator()));
        assert_eq!(norm_of(lp_matrix, &p, &q), beta);
        let coords = extend_coordinatewise(&prob).unwrap();
        assert!(agrees_on_domain(&coords, prob.operator()));
        assert_eq!(norm_of(&coords, &p, &q), beta);
    }
}

#[test]
fn functionals_extend_below_the_norm() {
    let mut s = Sampler::new(32);
    for _ in 0..20 {
        let p = random_norm(&mut s, 3, 2);
        let k = 1 + s.index(2);
        let z = random_subspace(&mut s, 3, k);
        // a convex combination of generators is dominated everywhere
        let weights: Vec<Rat> = (0..p.generators().len()).map(|_| s.positive()).collect();
        let total: Rat = weights.iter().sum();
        let weights: Vec<Rat> = weights.iter().map(|w| w / &total).collect();
        let f = RatVec::combination(3, &weights, p.generators());
        let phi = z.functional_values(&f);
        let psi = extend_functional_fully(&p, &z, &phi).unwrap();
        assert_eq!(z.functional_values(&psi), phi);
        assert!(hull_membership(&psi, p.generators()).unwrap().is_inside());
    }
}

/// A problem into a sup target together with a direction off its domain.
fn sup_problem_with_direction(s: &mut Sampler) -> (ExtensionProblem, RatVec) {
    let p = random_norm(s, 3, 2);
    let prob = ExtensionProblem::new(random_partial_operator(s, &p, &PolyAsymNorm::asym_sup(2))).unwrap();
    loop {
        let x0 = s.integer_vector(3, 3);
        if !prob.operator().domain().contains(&x0).unwrap() {
            return (prob, x0);
        }
    }
}

#[test]
fn fiber_distances_bound_target_distances() {
    let mut s = Sampler::new(33);
    for _ in 0..12 {
        let (prob, x0) = sup_problem_with_direction(&mut s);
        let (t, q, beta) = (prob.operator(), prob.target(), prob.bound());
        let k = t.domain().dim();
        for _ in 0..6 {
            let (u1, u2) = (t.apply_coords(&s.vector(k)), t.apply_coords(&s.vector(k)));
            let (d1, d2) = (fiber_distances(&prob, &x0, &u1).unwrap(), fiber_distances(&prob, &x0, &u2).unwrap());
            assert!(d1.r_value > Rat::zero() && d1.s_value > Rat::zero());
            assert!(q.value(&(&u2 - &u1)) <= beta * (&d2.r_value + &d1.s_value));
        }
    }
}

#[test]
fn one_step_inequalities_on_samples() {
    let mut s = Sampler::new(34);
    for _ in 0..12 {
        let (prob, x0) = sup_problem_with_direction(&mut s);
        let step = one_step_operator_extension(&prob, &x0).unwrap();
        let y0 = step.y0.clone().unwrap();
        let (t, p, q, beta) = (prob.operator(), prob.source(), prob.target(), prob.bound());
        for _ in 0..10 {
            let coords = s.vector(t.domain().dim());
            let (z, tz) = (t.domain().point(&coords), t.apply_coords(&coords));
            assert!(q.value(&(&tz + &y0)) <= beta * p.value(&(&z + &x0)));
            assert!(q.value(&(&tz - &y0)) <= beta * p.value(&(&z - &x0)));
            for scale in [s.positive(), -s.positive()] {
                let lhs = q.value(&tz.add_scaled(&scale, &y0));
                assert!(lhs <= beta * p.value(&z.add_scaled(&scale, &x0)), "t = {scale}");
            }
        }
        assert_eq!(step.operator.operator_norm(), OperatorNorm::Finite(beta.clone()));
    }
}

/// Random problems into `q`, plus the identity of `q` inside its glued space
/// when a family witnessing a failed intersection is given.
fn problem_corpus(s: &mut Sampler, q: &PolyAsymNorm, witness: Option<&asymspace_core::bip::MixedBallFamily>) -> Vec<ExtensionProblem> {
    let mut out: Vec<ExtensionProblem> = (0..5)
        .map(|_| {
            let p = random_norm(s, 3, 2);
            ExtensionProblem::new(random_partial_operator(s, &p, q)).unwrap()
        })
        .collect();
    if let Some(fam) = witness {
        out.push(necessity_pipeline(fam, 7).unwrap().projection.problem);
    }
    out
}

fn transported(prob: &ExtensionProblem, j: &Matrix) -> ExtensionProblem {
    let t = prob.operator();
    let target = t.target().pullback(&j.inverse().unwrap()).unwrap();
    let images = t.images().iter().map(|y| j.apply(y)).collect();
    let moved = PartialOperator::new(t.domain().clone(), images, t.source().clone(), target).unwrap();
    ExtensionProblem::with_bound(moved, prob.bound().clone()).unwrap()
}

#[test]
fn isometric_copies_share_verdicts() {
    let mut s = Sampler::new(35);
    let hex = hexagon_triangle();
    let mut problems = problem_corpus(&mut s, &PolyAsymNorm::hexagon(), Some(&hex));
    problems.extend(problem_corpus(&mut s, &PolyAsymNorm::asym_sup(2), None));
    let mut saw_failure = false;
    for prob in &problems {
        let verdict = extend_operator(prob).unwrap().is_extended();
        saw_failure |= !verdict;
        for _ in 0..3 {
            let j = loop {
                let j = Matrix::from_rows(2, vec![s.integer_vector(2, 3), s.integer_vector(2, 3)]);
                if j.inverse().is_some() {
                    break j;
                }
            };
            assert_eq!(extend_operator(&transported(prob, &j)).unwrap().is_extended(), verdict);
        }
    }
    assert!(saw_failure);
}

#[test]
fn complemented_embeddings_predict_extension() {
    let mut s = Sampler::new(36);
    let abs_fam = family(abs_line(), &[(&[0], 4, 1), (&[5], 4, 1)]);
    let hex_fam = hexagon_triangle();
    let cases: Vec<(PolyAsymNorm, Option<&asymspace_core::bip::MixedBallFamily>)> = vec![
        (PolyAsymNorm::positive_part(), None),
        (PolyAsymNorm::asym_sup(2), None),
        (PolyAsymNorm::hexagon(), Some(&hex_fam)),
        (abs_line(), Some(&abs_fam)),
    ];
    for (q, witness) in cases {
        let e = embed_into_ellinfty(&q);
        let m = e.target().dim();
        let range = Subspace::new(m, e.full_matrix().unwrap().columns()).unwrap();
        let complemented = norm_one_projection(e.target(), &range).unwrap().result.is_extended();
        assert_eq!(complemented, witness.is_none());
        let verdicts: Vec<bool> = problem_corpus(&mut s, &q, witness)
            .iter()
            .map(|prob| extend_operator(prob).unwrap().is_extended())
            .collect();
        if complemented {
            assert!(verdicts.iter().all(|&x| x));
        } else {
            assert!(verdicts.iter().any(|&x| !x));
        }
    }
}

#[test]
fn zero_operator_extends_by_zero() {
    let mut s = Sampler::new(37);
    let p = random_norm(&mut s, 3, 1);
    let z = random_subspace(&mut s, 3, 2);
    let t = PartialOperator::new(z, vec![RatVec::zeros(2); 2], p, PolyAsymNorm::hexagon()).unwrap();
    let prob = ExtensionProblem::new(t).unwrap();
    assert!(prob.bound().is_zero());
    assert_eq!(extend_operator(&prob).unwrap().matrix(), Some(&Matrix::zeros(2, 3)));
    let loose = ExtensionProblem::with_bound(prob.operator().clone(), Rat::one()).unwrap();
    assert!(extend_operator(&loose).unwrap().is_extended());
}
