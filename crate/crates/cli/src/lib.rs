//! Command-line front end: Mittag-Leffler evaluation, the derivative and
//! integral on parsed expressions, rule verification and grid tables.
//!
//! [`run`] is the whole program; the binary only forwards `argv` and the
//! exit code.

// Checks are written as !(x > 0.0) so that NaN fails them.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod args;
pub mod commands;
pub mod output;

use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;

use args::Cli;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_VERIFY_FAILED: i32 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{context}: {source}")]
    Numeric { context: String, source: vfrac_core::Error },

    #[error("writing output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn numeric(context: impl Into<String>, source: vfrac_core::Error) -> Self {
        CliError::Numeric {
            context: context.into(),
            source,
        }
    }
}

/// What a subcommand produced: the text to print and whether every check
/// it ran passed.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub text: String,
    pub passed: bool,
}

/// Runs the program on `argv` (including the program name), writing results
/// to `out` and diagnostics to `err`. Returns the process exit code.
pub fn run_with<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_ERROR
                }
            };
        }
    };
    match commands::execute(&cli) {
        Ok(outcome) => {
            if let Err(e) = out.write_all(outcome.text.as_bytes()).and_then(|_| out.flush()) {
                let _ = writeln!(err, "error: {}", CliError::Io(e));
                return EXIT_ERROR;
            }
            if outcome.passed {
                EXIT_OK
            } else {
                EXIT_VERIFY_FAILED
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}

/// [`run_with`] on the process's standard streams.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}
