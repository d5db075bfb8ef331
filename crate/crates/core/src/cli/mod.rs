//! The `harmonic-shear` command line.
//!
//! Exit codes: 0 pass, 1 certificate failure, 2 usage, 3 evaluation error,
//! 4 I/O error.

mod commands;
mod document;
mod parse;
mod suites;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use thiserror::Error;

use crate::analysis::{RzLattice, SampleGrid};
use crate::error::Error;
use crate::mappings::Family;
use crate::series::DEFAULT_ORDER;

pub use document::{CurveExport, FamilyConfig, MapDocument, Param, CUSTOM_FAMILY, SCHEMA_VERSION};
pub use parse::{parse_complex, parse_monomial, MonomialTerm};
pub use suites::{SuiteCase, SuiteReport};

/// Environment variable holding a grid override `"r1,r2,...;M"`.
pub const GRID_ENV: &str = "HARMONIC_SHEAR_GRID";

pub mod exit {
    pub const PASS: u8 = 0;
    pub const CERTIFICATE_FAIL: u8 = 1;
    pub const USAGE: u8 = 2;
    pub const EVALUATION: u8 = 3;
    pub const IO: u8 = 4;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Evaluation(#[from] Error),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Evaluation(Error::InvalidArgument(_)) => exit::USAGE,
            CliError::Evaluation(_) => exit::EVALUATION,
            CliError::Io { .. } => exit::IO,
        }
    }

    /// Reclassifies a library error raised while validating user parameters.
    fn invalid(e: Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "harmonic-shear",
    version,
    about = "Shear construction, convolution and certificates for planar harmonic mappings"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a named family and write it as a JSON document.
    Gen(GenArgs),
    /// Convolve two documents.
    Convolve(ConvolveArgs),
    /// Run one certificate on a document and print the report.
    Check(CheckArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Sample the image of a circle and write it as CSV.
    ExportBoundary(ExportArgs),
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|_| {
        let names: Vec<&str> = Family::ALL.iter().map(|f| f.as_str()).collect();
        format!("unknown family `{s}` (expected one of {})", names.join(", "))
    })
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct GenArgs {
    #[arg(value_parser = parse_family)]
    pub family: Family,
    #[arg(long)]
    pub mu: Option<f64>,
    #[arg(long)]
    pub nu: Option<f64>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub mu1: Option<f64>,
    /// Monomial dilatation, e.g. `a=0.5,0.2,n=3`.
    #[arg(long, value_parser = parse_monomial)]
    pub omega: Option<MonomialTerm>,
    /// Truncation order.
    #[arg(long = "N", default_value_t = DEFAULT_ORDER)]
    pub order: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConvolveMode {
    /// `h1 * h2 + conj(g1 * g2)`.
    Harmonic,
    /// `h1 * h2 + conj(g1 * h2)`; the second document must be analytic.
    Tilde,
}

#[derive(Debug, Args)]
pub struct ConvolveArgs {
    pub first: PathBuf,
    pub second: PathBuf,
    #[arg(long, value_enum, default_value_t = ConvolveMode::Harmonic)]
    pub mode: ConvolveMode,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GridArgs {
    /// Sample grid `r1,r2,...;M`; overrides the environment variable.
    #[arg(long)]
    pub grid: Option<String>,
    #[arg(long, default_value_t = 90)]
    pub mu_steps: usize,
    #[arg(long, default_value_t = 45)]
    pub nu_steps: usize,
}

impl GridArgs {
    pub fn grid(&self) -> Result<SampleGrid, CliError> {
        let config = match &self.grid {
            Some(s) => Some(s.clone()),
            None => std::env::var(GRID_ENV).ok(),
        };
        match config {
            Some(s) => s.parse().map_err(CliError::invalid),
            None => Ok(SampleGrid::default_grid()),
        }
    }

    pub fn lattice(&self) -> RzLattice {
        RzLattice {
            mu_steps: self.mu_steps,
            nu_steps: self.nu_steps,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckCriterion {
    Sense,
    Convex,
    Direction,
    Boundary,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct CheckArgs {
    pub doc: PathBuf,
    #[arg(long, value_enum)]
    pub criterion: CheckCriterion,
    #[arg(long, default_value_t = 0.0)]
    pub gamma: f64,
    /// Circle radius for `boundary`.
    #[arg(long, default_value_t = 0.9)]
    pub r: f64,
    /// Boundary samples for `boundary`.
    #[arg(long = "M", default_value_t = SampleGrid::DEFAULT_ANGLES)]
    pub samples: usize,
    #[command(flatten)]
    pub grid: GridArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    MonomialTheorem,
    Counterexample,
    GeneralizedF1,
    PhiConvex,
    TildeConvex,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, value_parser = parse_complex)]
    pub a: Option<Complex64>,
    #[arg(long)]
    pub phase: Option<f64>,
    #[arg(long)]
    pub mu: Option<f64>,
    #[arg(long)]
    pub nu: Option<f64>,
    #[arg(long)]
    pub mu1: Option<f64>,
    #[arg(long)]
    pub mu2: Option<f64>,
    /// Random draws for `phi-convex`.
    #[arg(long, default_value_t = 20)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Equispaced directions for `tilde-convex`.
    #[arg(long, default_value_t = 36)]
    pub directions: usize,
    #[arg(long = "N", default_value_t = DEFAULT_ORDER)]
    pub order: usize,
    #[command(flatten)]
    pub grid: GridArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    pub doc: PathBuf,
    #[arg(long)]
    pub r: f64,
    #[arg(long = "M", default_value_t = SampleGrid::DEFAULT_ANGLES)]
    pub samples: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::USAGE } else { exit::PASS };
            let _ = e.print();
            return code;
        }
    };
    let outcome = match &cli.command {
        Command::Gen(args) => commands::gen(args),
        Command::Convolve(args) => commands::convolve(args),
        Command::Check(args) => commands::check(args),
        Command::Verify(args) => suites::verify(args),
        Command::ExportBoundary(args) => commands::export_boundary(args),
    };
    match outcome {
        Ok(true) => exit::PASS,
        Ok(false) => exit::CERTIFICATE_FAIL,
        Err(e) => {
            eprintln!("harmonic-shear: {e}");
            e.exit_code()
        }
    }
}
