//! The `reduct-forge` command line.
//!
//! Exit status: 0 on success, 1 on domain and I/O errors, 2 on usage errors,
//! 3 when `verify` finds the netlists differ. Errors are printed to stderr as
//! one line starting with `error[<kind>]:`.

mod args;
mod commands;
pub mod report;

use std::ffi::OsString;
use std::fmt;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;

pub use args::{Cli, Command, Format};

/// Caps the worker thread count; `0` or unset means one per core.
pub const THREADS_ENV: &str = "REDUCT_FORGE_THREADS";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Usage(String),
    Io { path: String, message: String },
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io { .. } | CliError::Domain(_) => 1,
        }
    }

    pub(crate) fn domain(e: impl fmt::Display) -> Self {
        CliError::Domain(e.to_string())
    }
}

fn one_line(s: &str) -> String {
    s.trim()
        .lines()
        .map(str::trim)
        .collect::<Vec<_>>()
        .join("; ")
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "error[usage]: {}", one_line(m)),
            CliError::Io { path, message } => write!(f, "error[io]: {path}: {}", one_line(message)),
            CliError::Domain(m) => write!(f, "error[domain]: {}", one_line(m)),
        }
    }
}

impl std::error::Error for CliError {}

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = raw.trim().parse().map_err(|_| {
        CliError::Usage(format!(
            "{THREADS_ENV} must be a non-negative integer, got `{raw}`"
        ))
    })?;
    if n > 0 {
        // A pool may already exist when run() is called more than once in-process.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    Ok(())
}

/// Runs the command line `argv` (program name first), writing the report to
/// `stdout` and errors to `stderr`. Returns the process exit status.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = write!(stdout, "{e}");
            return 0;
        }
        Err(e) => {
            let message = e.to_string();
            let first = message
                .lines()
                .next()
                .unwrap_or("")
                .trim_start_matches("error: ");
            let err = CliError::Usage(first.to_string());
            let _ = writeln!(stderr, "{err}");
            return err.exit_code();
        }
    };
    if let Err(err) = configure_threads() {
        let _ = writeln!(stderr, "{err}");
        return err.exit_code();
    }
    let echo = argv
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy())
        .collect::<Vec<_>>()
        .join(" ");
    let started = std::time::Instant::now();
    let result = commands::execute(&cli, echo);
    if cli.verbose {
        let _ = writeln!(stderr, "elapsed_ms: {}", started.elapsed().as_millis());
    }
    match result {
        Ok(outcome) => {
            let _ = stdout.write_all(outcome.body.as_bytes());
            outcome.status
        }
        Err(err) => {
            let _ = writeln!(stderr, "{err}");
            err.exit_code()
        }
    }
}
