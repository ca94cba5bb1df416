use std::io::{ErrorKind, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

mod document;
mod error;
mod plot;
mod report;
mod tasks;

use document::TaskDocument;
use error::CliError;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Exact computations on polyhedral asymmetric normed spaces.
///
/// Exit status: 0 when the property holds or the computation succeeded,
/// 1 when it is violated (the report carries a certificate), 2 on bad input.
#[derive(Debug, Parser)]
#[command(name = "asymspace", version)]
struct Args {
    /// task document, or `-` for standard input
    task_file: String,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// directory for planar CSV and SVG output
    #[arg(long)]
    out: Option<PathBuf>,
    /// decimal digits in text reports and plot files
    #[arg(long, default_value_t = 6)]
    digits: usize,
    /// seed for the sampled checks of the necessity pipeline
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn read_input(path: &str) -> Result<String, CliError> {
    let mut text = String::new();
    if path == "-" {
        std::io::stdin().read_to_string(&mut text).map_err(|source| CliError::Read { path: "stdin".into(), source })?;
    } else {
        text = std::fs::read_to_string(path).map_err(|source| CliError::Read { path: path.into(), source })?;
    }
    Ok(text)
}

fn execute(args: &Args) -> Result<u8, CliError> {
    let doc = TaskDocument::parse(&read_input(&args.task_file)?)?;
    if args.out.is_some() {
        if let Some(space) = doc.drawn_space() {
            if space.dimension != 2 {
                return Err(CliError::UnsupportedDimension(space.dimension));
            }
        }
    }
    let outcome = tasks::run(&doc, args.seed).map_err(|e| CliError::field(doc.name(), e))?;
    if let (Some(dir), Some(scene)) = (&args.out, &outcome.scene) {
        plot::write_scene(scene, dir, args.digits)?;
    }
    let text = match args.format {
        Format::Text => outcome.report.to_text(args.digits),
        Format::Json => serde_json::to_string_pretty(&outcome.report.to_json())? + "\n",
    };
    match std::io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() != ErrorKind::BrokenPipe => Err(CliError::Write { path: "stdout".into(), source: e }),
        _ => Ok(outcome.report.exit_code()),
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    match execute(&args) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
