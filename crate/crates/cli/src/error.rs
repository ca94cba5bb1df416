use thiserror::Error;

/// Everything that ends a run with exit code 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: String, source: std::io::Error },
    #[error("malformed document{}: {source}", at(path))]
    Syntax { path: String, source: serde_json::Error },
    #[error("{field}: {message}")]
    Field { field: String, message: String },
    #[error("geometry output needs a planar space, got dimension {0}")]
    UnsupportedDimension(usize),
    #[error(transparent)]
    Core(#[from] asymspace_core::Error),
}

fn at(path: &str) -> String {
    if path.is_empty() || path == "." {
        String::new()
    } else {
        format!(" at {path}")
    }
}

impl From<serde_json::Error> for CliError {
    fn from(source: serde_json::Error) -> Self {
        CliError::Syntax { path: String::new(), source }
    }
}

impl CliError {
    pub fn field(field: impl Into<String>, message: impl ToString) -> Self {
        CliError::Field { field: field.into(), message: message.to_string() }
    }
}
