use asymspace_core::ratlp::{to_decimal, Matrix, Rat, RatVec};
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, PartialEq)]
pub enum Field {
    Text(String),
    Flag(bool),
    Count(usize),
    Scalar(Rat),
    Vector(RatVec),
    Matrix(Matrix),
    List(Vec<Field>),
    Record(Vec<(String, Field)>),
}

pub fn record<const N: usize>(pairs: [(&str, Field); N]) -> Field {
    Field::Record(pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect())
}

impl Field {
    fn to_json(&self) -> Value {
        match self {
            Field::Text(s) => json!(s),
            Field::Flag(b) => json!(b),
            Field::Count(n) => json!(n),
            Field::Scalar(r) => json!(r.to_string()),
            Field::Vector(v) => Value::Array(v.iter().map(|c| json!(c.to_string())).collect()),
            Field::Matrix(m) => Value::Array(m.rows().iter().map(|r| Field::Vector(r.clone()).to_json()).collect()),
            Field::List(items) => Value::Array(items.iter().map(Field::to_json).collect()),
            Field::Record(pairs) => Value::Object(pairs.iter().map(|(k, v)| (k.clone(), v.to_json())).collect()),
        }
    }

    /// Single-line rendering, when the field has one.
    fn inline(&self, digits: usize) -> Option<String> {
        match self {
            Field::Text(s) => Some(s.clone()),
            Field::Flag(b) => Some(b.to_string()),
            Field::Count(n) => Some(n.to_string()),
            Field::Scalar(r) if r.is_integer() => Some(r.to_string()),
            Field::Scalar(r) => Some(format!("{r} (~{})", to_decimal(r, digits))),
            Field::Vector(v) => Some(v.to_string()),
            Field::List(items) if items.is_empty() => Some("[]".into()),
            _ => None,
        }
    }

    fn write_text(&self, out: &mut String, indent: usize, digits: usize) {
        let pad = " ".repeat(indent);
        match self {
            Field::Matrix(m) => {
                for row in m.rows() {
                    out.push_str(&format!("{pad}{row}\n"));
                }
            }
            Field::List(items) => {
                for item in items {
                    match item.inline(digits) {
                        Some(line) => out.push_str(&format!("{pad}- {line}\n")),
                        None => {
                            out.push_str(&format!("{pad}-\n"));
                            item.write_text(out, indent + 2, digits);
                        }
                    }
                }
            }
            Field::Record(pairs) => write_pairs(out, pairs, indent, digits),
            other => out.push_str(&format!("{pad}{}\n", other.inline(digits).unwrap_or_default())),
        }
    }
}

fn write_pairs(out: &mut String, pairs: &[(String, Field)], indent: usize, digits: usize) {
    let pad = " ".repeat(indent);
    for (key, value) in pairs {
        let label = key.replace('_', " ");
        match value.inline(digits) {
            Some(line) => out.push_str(&format!("{pad}{label}: {line}\n")),
            None => {
                out.push_str(&format!("{pad}{label}:\n"));
                value.write_text(out, indent + 2, digits);
            }
        }
    }
}

/// The outcome of one task. `violated` maps to exit code 1.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub task: &'static str,
    pub status: String,
    pub violated: bool,
    pub body: Vec<(String, Field)>,
}

impl Report {
    pub fn new(task: &'static str, status: impl Into<String>, violated: bool) -> Self {
        Report { task, status: status.into(), violated, body: Vec::new() }
    }

    pub fn with(mut self, key: &str, value: Field) -> Self {
        self.body.push((key.to_string(), value));
        self
    }

    pub fn push(&mut self, key: &str, value: Field) {
        self.body.push((key.to_string(), value));
    }

    pub fn exit_code(&self) -> u8 {
        u8::from(self.violated)
    }

    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        map.insert("task".into(), json!(self.task));
        map.insert("status".into(), json!(self.status));
        map.insert("exit_code".into(), json!(self.exit_code()));
        for (k, v) in &self.body {
            map.insert(k.clone(), v.to_json());
        }
        Value::Object(map)
    }

    pub fn to_text(&self, digits: usize) -> String {
        let mut out = format!("task: {}\nstatus: {}\n", self.task, self.status);
        write_pairs(&mut out, &self.body, 0, digits);
        out
    }
}
