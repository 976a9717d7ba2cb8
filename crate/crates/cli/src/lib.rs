//! Command-line surface for `tee-probe`.
//!
//! Every subcommand returns an [`Outcome`] (text for stdout plus an exit
//! code) or a [`CliError`]; `main` only prints and exits, so the acceptance
//! tests can drive commands in-process as well as through the binary.

pub mod commands;
pub mod format;
pub mod sources;

use std::fmt;

use clap::{Parser, Subcommand, ValueEnum};

pub use commands::analyze::AnalyzeArgs;
pub use commands::eval::EvalArgs;
pub use commands::generate::GenerateArgs;
pub use commands::geometry::GeometryArgs;
pub use commands::oracle::OracleArgs;
pub use commands::scan::ScanArgs;

/// Exit codes.
pub mod exit {
    pub const OK: u8 = 0;
    /// Assertion or validation failure (scan, oracle, geometry validate).
    pub const FAILED: u8 = 1;
    pub const INPUT: u8 = 2;
    /// Strict mode met a union with holes.
    pub const UNSUPPORTED_GEOMETRY: u8 = 3;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum OutputFormat {
    #[default]
    Table,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "tee-probe", version, about = "Entropy quantities, TEE probes and punctured-sphere evaluation on disk partitions")]
pub struct Cli {
    /// Output format for stdout.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Table)]
    pub format: OutputFormat,
    /// Log filter (error, warn, info, debug, trace).
    #[arg(long, global = true, default_value = "warn")]
    pub log_level: String,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a standard quantity.
    Generate(GenerateArgs),
    /// Balance profile and classification of a quantity.
    Analyze(AnalyzeArgs),
    /// Evaluate a quantity on an arrangement.
    Eval(EvalArgs),
    /// Sweep a catalog over geometries and modes.
    Scan(ScanArgs),
    /// Compare the closed-form sphere entropy with brute-force enumeration.
    Oracle(OracleArgs),
    /// Validate, describe or export arrangements.
    Geometry(GeometryArgs),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: u8,
}

impl Outcome {
    pub fn ok(stdout: String) -> Self {
        Outcome { stdout, code: exit::OK }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl fmt::Display) -> Self {
        CliError { code: exit::INPUT, message: message.to_string() }
    }

    pub fn unsupported(message: impl fmt::Display) -> Self {
        CliError { code: exit::UNSUPPORTED_GEOMETRY, message: message.to_string() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let fmt = cli.format;
    match &cli.command {
        Command::Generate(args) => commands::generate::run(args, fmt),
        Command::Analyze(args) => commands::analyze::run(args, fmt),
        Command::Eval(args) => commands::eval::run(args, fmt),
        Command::Scan(args) => commands::scan::run(args, fmt),
        Command::Oracle(args) => commands::oracle::run(args, fmt),
        Command::Geometry(args) => commands::geometry::run(args, fmt),
    }
}

/// Parse `args` (without the program name) and run.
pub fn run_args<I, S>(args: I) -> Result<Outcome, CliError>
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let argv = std::iter::once(std::ffi::OsString::from("tee-probe")).chain(args.into_iter().map(Into::into));
    let cli = Cli::try_parse_from(argv).map_err(|e| CliError::input(e.to_string().trim_end()))?;
    run(&cli)
}
