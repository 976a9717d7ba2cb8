use clap::{Args, Subcommand};

use crate::format::{emit, to_json_text};
use crate::sources::resolve_geometry;
use crate::{exit, CliError, Outcome, OutputFormat};

#[derive(Debug, Args)]
pub struct GeometryArgs {
    #[command(subcommand)]
    pub action: GeometryAction,
}

#[derive(Debug, Subcommand)]
pub enum GeometryAction {
    /// Check the planar-map invariants; exits 1 when any fail.
    Validate { source: String },
    /// Counts, adjacency and the vertex table.
    Describe { source: String },
    /// Arrangement JSON (always JSON, regardless of --format).
    Export { source: String },
}

pub fn run(args: &GeometryArgs, format: OutputFormat) -> Result<Outcome, CliError> {
    let json_err = |e: serde_json::Error| CliError::input(e.to_string());
    match &args.action {
        GeometryAction::Validate { source } => {
            let (name, a) = resolve_geometry(source)?;
            let report = a.validate();
            let value = serde_json::to_value(&report).map_err(json_err)?;
            let stdout = emit(format, &value, || format!("{name}\n{report}\n"))?;
            Ok(Outcome { stdout, code: if report.is_valid() { exit::OK } else { exit::FAILED } })
        }
        GeometryAction::Describe { source } => {
            let (name, a) = resolve_geometry(source)?;
            let d = a.describe();
            let value = serde_json::to_value(&d).map_err(json_err)?;
            Ok(Outcome::ok(emit(format, &value, || format!("{name}\n{d}"))?))
        }
        GeometryAction::Export { source } => {
            let (_, a) = resolve_geometry(source)?;
            Ok(Outcome::ok(to_json_text(&a.to_json())?))
        }
    }
}
