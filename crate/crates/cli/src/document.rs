//! Task documents. Every rational is a JSON string such as `"-3/4"`.

use asymspace_core::bip::{MixedBall, MixedBallFamily};
use asymspace_core::geometry::{PartialOperator, PolyAsymNorm, Subspace};
use asymspace_core::ratlp::{parse_rat, Matrix, Rat, RatVec};
use serde::de::Error as _;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatText(pub Rat);

impl Serialize for RatText {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for RatText {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        parse_rat(&text).map(RatText).map_err(D::Error::custom)
    }
}

pub type VectorText = Vec<RatText>;

fn to_vector(field: &str, coords: &[RatText], dim: usize) -> Result<RatVec, CliError> {
    if coords.len() != dim {
        return Err(CliError::field(field, format!("expected {dim} coordinates, found {}", coords.len())));
    }
    Ok(RatVec::new(coords.iter().map(|c| c.0.clone()).collect()))
}

fn to_vectors(field: &str, rows: &[VectorText], dim: usize) -> Result<Vec<RatVec>, CliError> {
    rows.iter()
        .enumerate()
        .map(|(i, r)| to_vector(&format!("{field}[{i}]"), r, dim))
        .collect()
}

fn to_radius(field: &str, r: &RatText) -> Result<Rat, CliError> {
    if r.0 < Rat::from_integer(0.into()) {
        return Err(CliError::field(field, "radius must be nonnegative"));
    }
    Ok(r.0.clone())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDocument {
    pub dimension: usize,
    pub generators: Vec<VectorText>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl SpaceDocument {
    pub fn to_norm(&self, field: &str) -> Result<PolyAsymNorm, CliError> {
        let generators = to_vectors(&format!("{field}.generators"), &self.generators, self.dimension)?;
        PolyAsymNorm::new(self.dimension, generators).map_err(|e| CliError::field(format!("{field}.generators"), e))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BallDocument {
    pub center: VectorText,
    pub radius: RatText,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MixedBallDocument {
    pub center: VectorText,
    pub forward_radius: RatText,
    pub backward_radius: RatText,
}

pub fn to_family(norm: PolyAsymNorm, entries: &[MixedBallDocument]) -> Result<MixedBallFamily, CliError> {
    let dim = norm.dim();
    let entries = entries
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let center = to_vector(&format!("family[{i}].center"), &e.center, dim)?;
            let r = to_radius(&format!("family[{i}].forward_radius"), &e.forward_radius)?;
            let s = to_radius(&format!("family[{i}].backward_radius"), &e.backward_radius)?;
            Ok(MixedBall::new(center, r, s))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    MixedBallFamily::new(norm, entries).map_err(|e| CliError::field("family", e))
}

/// An operator either as a full `m × n` matrix or by its values on a domain basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorDocument {
    pub source: SpaceDocument,
    pub target: SpaceDocument,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<VectorText>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain: Option<Vec<VectorText>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub images: Option<Vec<VectorText>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<RatText>,
}

impl OperatorDocument {
    pub fn to_operator(&self) -> Result<PartialOperator, CliError> {
        let source = self.source.to_norm("source")?;
        let target = self.target.to_norm("target")?;
        let (n, m) = (source.dim(), target.dim());
        match (&self.matrix, &self.domain, &self.images) {
            (Some(rows), None, None) => {
                if rows.len() != m {
                    return Err(CliError::field("matrix", format!("expected {m} rows, found {}", rows.len())));
                }
                let matrix = Matrix::from_rows(n, to_vectors("matrix", rows, n)?);
                Ok(PartialOperator::total(&matrix, source, target)?)
            }
            (None, Some(basis), Some(images)) => {
                let basis = to_vectors("domain", basis, n)?;
                let images = to_vectors("images", images, m)?;
                let domain = Subspace::new(n, basis).map_err(|e| CliError::field("domain", e))?;
                PartialOperator::new(domain, images, source, target).map_err(|e| CliError::field("images", e))
            }
            _ => Err(CliError::field("operator", "give either \"matrix\" or both \"domain\" and \"images\"")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NormCheckTask {
    pub space: SpaceDocument,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub points: Vec<VectorText>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BallIntersectTask {
    pub space: SpaceDocument,
    pub forward: BallDocument,
    pub backward: BallDocument,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyTask {
    pub space: SpaceDocument,
    pub family: Vec<MixedBallDocument>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorTask {
    pub operator: OperatorDocument,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceTask {
    pub space: SpaceDocument,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProjectTask {
    pub space: SpaceDocument,
    pub subspace: Vec<VectorText>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "task", rename_all = "kebab-case")]
pub enum TaskDocument {
    NormCheck(NormCheckTask),
    BallIntersect(BallIntersectTask),
    BipCheck(FamilyTask),
    OpNorm(OperatorTask),
    Extend(OperatorTask),
    Embed(SpaceTask),
    Project(ProjectTask),
    NecessityDemo(FamilyTask),
}

const TASK_NAMES: &str = "norm-check, ball-intersect, bip-check, op-norm, extend, embed, project, necessity-demo";

fn payload<T: DeserializeOwned>(value: Value) -> Result<T, CliError> {
    serde_path_to_error::deserialize(value).map_err(|e| CliError::Syntax { path: e.path().to_string(), source: e.into_inner() })
}

impl TaskDocument {
    /// Reads the `task` tag first so payload errors carry their field path.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut value: Value = serde_json::from_str(text)?;
        let Some(object) = value.as_object_mut() else {
            return Err(CliError::field("document", "expected a JSON object"));
        };
        let tag = match object.remove("task") {
            Some(Value::String(tag)) => tag,
            Some(_) => return Err(CliError::field("task", "expected a string")),
            None => return Err(CliError::field("task", format!("missing; expected one of {TASK_NAMES}"))),
        };
        Ok(match tag.as_str() {
            "norm-check" => TaskDocument::NormCheck(payload(value)?),
            "ball-intersect" => TaskDocument::BallIntersect(payload(value)?),
            "bip-check" => TaskDocument::BipCheck(payload(value)?),
            "op-norm" => TaskDocument::OpNorm(payload(value)?),
            "extend" => TaskDocument::Extend(payload(value)?),
            "embed" => TaskDocument::Embed(payload(value)?),
            "project" => TaskDocument::Project(payload(value)?),
            "necessity-demo" => TaskDocument::NecessityDemo(payload(value)?),
            other => return Err(CliError::field("task", format!("unknown task {other:?}; expected one of {TASK_NAMES}"))),
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            TaskDocument::NormCheck(_) => "norm-check",
            TaskDocument::BallIntersect(_) => "ball-intersect",
            TaskDocument::BipCheck(_) => "bip-check",
            TaskDocument::OpNorm(_) => "op-norm",
            TaskDocument::Extend(_) => "extend",
            TaskDocument::Embed(_) => "embed",
            TaskDocument::Project(_) => "project",
            TaskDocument::NecessityDemo(_) => "necessity-demo",
        }
    }

    /// The space whose plane pictures `--out` would draw, if the task has one.
    pub fn drawn_space(&self) -> Option<&SpaceDocument> {
        Some(match self {
            TaskDocument::NormCheck(t) => &t.space,
            TaskDocument::BallIntersect(t) => &t.space,
            TaskDocument::BipCheck(t) | TaskDocument::NecessityDemo(t) => &t.space,
            TaskDocument::Embed(t) => &t.space,
            TaskDocument::Project(t) => &t.space,
            TaskDocument::OpNorm(t) | TaskDocument::Extend(t) => &t.operator.source,
        })
    }
}

pub fn point(field: &str, coords: &[RatText], dim: usize) -> Result<RatVec, CliError> {
    to_vector(field, coords, dim)
}

pub fn points(field: &str, rows: &[VectorText], dim: usize) -> Result<Vec<RatVec>, CliError> {
    to_vectors(field, rows, dim)
}

pub fn radius(field: &str, r: &RatText) -> Result<Rat, CliError> {
    to_radius(field, r)
}
