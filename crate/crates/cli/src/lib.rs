//! Command-line front end for `hessflag-core`.
//!
//! [`run`] is the whole program; `main` only forwards the process arguments
//! and streams. Exit codes: 0 success, 1 usage error, 2 verification
//! disagreement, 3 size cap exceeded.

mod args;
mod commands;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;
use thiserror::Error;

pub use args::{Cli, Command, Format};
pub use commands::{
    verify_summary, AtlasRecord, CheckSummary, ClassifyReport, ProbeReport, VerifySummary,
    SCHEMA_VERSION, TOOL_VERSION,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DISAGREEMENT: i32 = 2;
pub const EXIT_CAP: i32 = 3;

/// Default cap on n for the atlas and verify batches.
pub const BATCH_CAP: usize = 7;
/// Default cap on n for single queries.
pub const QUERY_CAP: usize = 10;
/// Environment variable overriding both caps.
pub const MAX_N_ENV: &str = "HESSFLAG_MAX_N";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Core(#[from] hessflag_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error("n = {n} exceeds the cap of {max}; pass --unsafe-n or set {MAX_N_ENV} to go further")]
    Cap { n: usize, max: usize },
    #[error("verification failed: {0}")]
    Disagreement(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Cap { .. } | CliError::Core(hessflag_core::Error::EnumerationCap { .. }) => {
                EXIT_CAP
            }
            CliError::Disagreement(_) => EXIT_DISAGREEMENT,
            _ => EXIT_USAGE,
        }
    }

    fn is_broken_pipe(&self) -> bool {
        let kind = match self {
            CliError::Io(e) => Some(e.kind()),
            CliError::Json(e) => e.io_error_kind(),
            CliError::Csv(e) => match e.kind() {
                csv::ErrorKind::Io(e) => Some(e.kind()),
                _ => None,
            },
            _ => None,
        };
        kind == Some(std::io::ErrorKind::BrokenPipe)
    }
}

/// Parses `args` (program name first), runs the command, and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    match commands::dispatch(&cli, out) {
        Ok(code) => code,
        Err(e) if e.is_broken_pipe() => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

/// The cap in force: `--unsafe-n` lifts it, otherwise HESSFLAG_MAX_N or the default.
pub(crate) fn check_cap(n: usize, default: usize, unsafe_n: bool) -> Result<(), CliError> {
    if unsafe_n {
        return Ok(());
    }
    let max = std::env::var(MAX_N_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(default);
    if n > max {
        return Err(CliError::Cap { n, max });
    }
    Ok(())
}
