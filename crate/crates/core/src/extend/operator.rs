use num_traits::{One, Zero};

use super::functional::extend_functional_fully;
use crate::error::{Error, Result};
use crate::geometry::{represent_operator_by_functionals, OperatorNorm, PartialOperator, PolyAsymNorm};
use crate::ratlp::{hull_membership, CertifiedEmpty, HullMembership, LinearProgram, LpOutcome, Matrix, Rat, RatVec};

/// Extend `T: Z → (ℝ^m, q)` to all of `(ℝ^n, p)` with `q(S x) ≤ β p(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionProblem {
    operator: PartialOperator,
    bound: Rat,
}

impl ExtensionProblem {
    /// The norm-preserving problem: `β = ‖T|`.
    pub fn new(operator: PartialOperator) -> Result<Self> {
        match operator.operator_norm() {
            OperatorNorm::Finite(bound) => Ok(Self { operator, bound }),
            OperatorNorm::Unbounded => Err(Error::Discontinuous),
        }
    }

    /// A problem with an explicit bound, which must be at least `‖T|`.
    pub fn with_bound(operator: PartialOperator, bound: Rat) -> Result<Self> {
        match operator.operator_norm() {
            OperatorNorm::Finite(norm) if norm <= bound => Ok(Self { operator, bound }),
            OperatorNorm::Finite(norm) => Err(Error::InvalidInput(format!(
                "bound {bound} is below the operator norm {norm}"
            ))),
            OperatorNorm::Unbounded => Err(Error::Discontinuous),
        }
    }

    pub fn operator(&self) -> &PartialOperator {
        &self.operator
    }

    pub fn bound(&self) -> &Rat {
        &self.bound
    }

    pub fn source(&self) -> &PolyAsymNorm {
        self.operator.source()
    }

    pub fn target(&self) -> &PolyAsymNorm {
        self.operator.target()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtensionResult {
    Extended {
        /// `m × n` matrix of the extension
        matrix: Matrix,
        /// for each target generator `b_j`, convex weights `λ` with `Sᵀ b_j = β Σ λ_i a_i`
        multipliers: Vec<Vec<Rat>>,
    },
    NotExtendable(CertifiedEmpty),
}

impl ExtensionResult {
    pub fn is_extended(&self) -> bool {
        matches!(self, ExtensionResult::Extended { .. })
    }

    pub fn matrix(&self) -> Option<&Matrix> {
        match self {
            ExtensionResult::Extended { matrix, .. } => Some(matrix),
            ExtensionResult::NotExtendable(_) => None,
        }
    }

    pub fn label(&self) -> &'static str {
        if self.is_extended() {
            "extended"
        } else {
            "not-extendable"
        }
    }
}

/// Variable layout of the extension program: the entries of `S` row by row,
/// then the weights for each target generator.
struct Layout {
    rows: usize,
    cols: usize,
    sources: usize,
}

impl Layout {
    fn entry(&self, r: usize, c: usize) -> usize {
        r * self.cols + c
    }

    fn weight(&self, j: usize, i: usize) -> usize {
        self.rows * self.cols + j * self.sources + i
    }
}

/// The feasibility program over `S` and the weights whose solutions are the
/// extensions with `q(S x) ≤ β p(x)`.
pub fn extension_program(prob: &ExtensionProblem) -> LinearProgram {
    let t = prob.operator();
    let (p, q) = (prob.source(), prob.target());
    let layout = Layout { rows: q.dim(), cols: p.dim(), sources: p.generators().len() };
    let total = layout.weight(q.generators().len(), 0);
    let mut lp = LinearProgram::feasibility(total);
    let row = |entries: Vec<(usize, Rat)>| {
        let mut coords = vec![Rat::zero(); total];
        for (k, v) in entries {
            coords[k] += v;
        }
        RatVec::new(coords)
    };
    // S b = T b on the domain basis
    for (b, image) in t.domain().basis().iter().zip(t.images()) {
        for r in 0..layout.rows {
            let entries = (0..layout.cols).map(|c| (layout.entry(r, c), b[c].clone())).collect();
            lp.push_eq(row(entries), image[r].clone());
        }
    }
    for (j, target_gen) in q.generators().iter().enumerate() {
        // Sᵀ b_j - β Σ λ_i a_i = 0, coordinate by coordinate
        for c in 0..layout.cols {
            let mut entries: Vec<(usize, Rat)> =
                (0..layout.rows).map(|r| (layout.entry(r, c), target_gen[r].clone())).collect();
            for (i, a) in p.generators().iter().enumerate() {
                entries.push((layout.weight(j, i), -(prob.bound() * &a[c])));
            }
            lp.push_eq(row(entries), Rat::zero());
        }
        let simplex = (0..layout.sources).map(|i| (layout.weight(j, i), Rat::one())).collect();
        lp.push_eq(row(simplex), Rat::one());
        for i in 0..layout.sources {
            lp.push_le(row(vec![(layout.weight(j, i), -Rat::one())]), Rat::zero());
        }
    }
    lp
}

/// Decides whether `T` has an extension `S` to all of `ℝ^n` with
/// `q(S x) ≤ β p(x)`, returning either `S` with hull weights or a certificate.
pub fn extend_operator(prob: &ExtensionProblem) -> Result<ExtensionResult> {
    let (p, q) = (prob.source(), prob.target());
    let layout = Layout { rows: q.dim(), cols: p.dim(), sources: p.generators().len() };
    let program = extension_program(prob);
    match program.solve()? {
        LpOutcome::Optimal { point, .. } => {
            let matrix = Matrix::from_rows(
                layout.cols,
                (0..layout.rows)
                    .map(|r| (0..layout.cols).map(|c| point[layout.entry(r, c)].clone()).collect())
                    .collect(),
            );
            let multipliers: Vec<Vec<Rat>> = (0..q.generators().len())
                .map(|j| (0..layout.sources).map(|i| point[layout.weight(j, i)].clone()).collect())
                .collect();
            let result = ExtensionResult::Extended { matrix, multipliers };
            assert!(verify_extension(prob, &result), "extension fails its own check");
            Ok(result)
        }
        LpOutcome::Infeasible { certificate } => {
            let empty = CertifiedEmpty { program, certificate };
            assert!(empty.verify(), "extension certificate fails to verify");
            Ok(ExtensionResult::NotExtendable(empty))
        }
        LpOutcome::Unbounded { .. } => unreachable!("feasibility programs are never unbounded"),
    }
}

/// Re-checks a result exactly: `S` agrees with `T` on the domain basis and
/// every weight vector is convex and reproduces `Sᵀ b_j / β`; or the
/// certificate verifies against the problem's own program.
pub fn verify_extension(prob: &ExtensionProblem, result: &ExtensionResult) -> bool {
    match result {
        ExtensionResult::Extended { matrix, multipliers } => {
            let t = prob.operator();
            let agrees = t.domain().basis().iter().zip(t.images()).all(|(b, y)| &matrix.apply(b) == y);
            let p = prob.source();
            let dominated = prob.target().generators().iter().zip(multipliers).all(|(b, weights)| {
                let convex = weights.iter().all(|w| w >= &Rat::zero()) && weights.iter().sum::<Rat>() == Rat::one();
                let combo = RatVec::combination(p.dim(), weights, p.generators()).scale(prob.bound());
                convex && combo == matrix.apply_transpose(b)
            });
            agrees && dominated
        }
        ExtensionResult::NotExtendable(empty) => empty.program == extension_program(prob) && empty.verify(),
    }
}

/// The coordinate-wise route for asymmetric-sup targets: each coordinate
/// functional `φ_i ≤ β p` is extended separately and the rows reassembled.
pub fn extend_coordinatewise(prob: &ExtensionProblem) -> Result<Matrix> {
    let t = prob.operator();
    let functionals = represent_operator_by_functionals(t)?;
    let p = prob.source();
    let rows = if prob.bound().is_zero() {
        // q̃(T z) = 0 forces every φ_i ≤ 0 on Z, hence φ_i = 0 there
        vec![RatVec::zeros(p.dim()); functionals.len()]
    } else {
        let scaled = p.scaled(prob.bound())?;
        functionals
            .iter()
            .map(|phi| {
                let values: Vec<Rat> = phi.images().iter().map(|y| y[0].clone()).collect();
                extend_functional_fully(&scaled, t.domain(), &values)
            })
            .collect::<Result<Vec<_>>>()?
    };
    let matrix = Matrix::from_rows(p.dim(), rows);
    for row in matrix.rows() {
        let inside = prob.bound().is_zero()
            || matches!(hull_membership(&row.scale(&prob.bound().recip()), p.generators())?, HullMembership::Inside { .. });
        assert!(inside, "coordinate functional escapes β·p");
    }
    Ok(matrix)
}
