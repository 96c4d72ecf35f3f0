//! Command-line front end for `apolarity`. Every number the tool prints comes
//! from a library call; this crate only parses, formats and writes files.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use apolarity::FieldSpec;
use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

pub mod commands;
pub mod format;
pub mod report;

pub use format::{emit_system, parse_system, FormatError};
pub use report::ReportDocument;

#[derive(Debug, Parser)]
#[command(name = "apolarity", version, about = "Hilbert functions, socle vectors and WLP tests for inverse systems")]
pub struct Cli {
    /// Coefficient field, `q` or `p:PRIME`; overrides a file's header.
    #[arg(long, global = true)]
    pub field: Option<FieldSpec>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    /// Write the output here (atomically) instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// h-vector, socle vector, levelness, unimodality and Macaulay check.
    Hvec { file: PathBuf },
    /// Seeded Weak Lefschetz probe.
    Wlp {
        file: PathBuf,
        #[arg(long, default_value_t = 8)]
        trials: usize,
        #[arg(long, env = "APOLARITY_SEED", default_value_t = 0)]
        seed: u64,
    },
    /// The two-generator type-two module in three variables.
    Specimen {
        #[arg(long)]
        e: u32,
        /// Also write the system file here.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// A seeded random member of the type-two family.
    Family {
        #[arg(long)]
        e: u32,
        #[arg(long, env = "APOLARITY_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// The last `count` monomials of degree `e` in lex order (default `3e`).
    Lexseg {
        #[arg(long)]
        e: u32,
        #[arg(long)]
        count: Option<usize>,
    },
    /// The non-unimodal monomial level module, optionally in more variables.
    Nonunimodal {
        #[arg(long)]
        e: u32,
        #[arg(long, default_value_t = 3)]
        codim: usize,
    },
    /// Hilbert-series identity for the type-two sets of points.
    PointsIdentity {
        #[arg(long, required_unless_present = "range", conflicts_with = "range")]
        e: Option<u32>,
        /// Inclusive range `A..B`.
        #[arg(long, value_parser = parse_range)]
        range: Option<(u32, u32)>,
    },
    /// Macaulay and unimodality checks for a comma-separated sequence.
    Osequence {
        #[arg(long)]
        h: String,
    },
}

fn parse_range(s: &str) -> Result<(u32, u32), String> {
    let (a, b) =
        s.split_once("..=").or_else(|| s.split_once("..")).ok_or_else(|| format!("expected A..B, got {s:?}"))?;
    let a: u32 = a.trim().parse().map_err(|_| format!("bad range start {a:?}"))?;
    let b: u32 = b.trim().parse().map_err(|_| format!("bad range end {b:?}"))?;
    if a > b {
        return Err(format!("empty range {a}..{b}"));
    }
    Ok((a, b))
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Library(#[from] apolarity::Error),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    /// 1 when a mathematical identity failed, 2 for everything the caller
    /// got wrong.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Library(apolarity::Error::IdentityViolation { .. }) => 1,
            _ => 2,
        }
    }
}

/// A finished command: the report, its text rendering, and whether every
/// mathematical check it performs passed.
#[derive(Debug)]
pub struct Outcome {
    pub report: ReportDocument,
    pub text: String,
    pub passed: bool,
}

/// Parses `args` (including the program name), runs the command and writes
/// its output. Returns the process exit code.
pub fn run_command<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(rendered.as_bytes())
            } else {
                stdout.write_all(rendered.as_bytes())
            };
            return e.exit_code();
        }
    };
    let outcome = match commands::execute(&cli) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return e.exit_code();
        }
    };
    let body = match cli.format {
        OutputFormat::Text => outcome.text,
        OutputFormat::Json => outcome.report.to_json(),
    };
    let written = match &cli.out {
        Some(path) => {
            report::write_atomic(path, body.as_bytes()).map_err(|source| CliError::Io { path: path.clone(), source })
        }
        None => stdout.write_all(body.as_bytes()).map_err(|source| CliError::Io { path: "<stdout>".into(), source }),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: {e}");
        return 2;
    }
    if outcome.passed {
        0
    } else {
        1
    }
}
