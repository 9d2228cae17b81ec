//! Command-line front end over `icis-core`.
//!
//! Exit codes: 0 success (or violations found under `--expect-violations`),
//! 1 unexpected verdicts, 2 usage errors.

pub mod args;
mod commands;
pub mod report;

use std::ffi::OsString;

use clap::Parser;

pub use args::{Cli, Command, Format};
pub use commands::{execute, replay_argv};
pub use report::{Report, Table};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] icis_core::Error),
    #[error("{0}")]
    Io(String),
    #[error("malformed report: {0}")]
    Report(String),
}

/// Result of one command before rendering.
#[derive(Debug, Clone)]
pub struct Execution {
    pub report: Report,
    pub table: Table,
    /// Everything behaved as expected.
    pub ok: bool,
}

impl Execution {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.report.to_json(),
            Format::Csv => self.table.to_csv(),
            Format::Human => report::to_human(&self.report, &self.table),
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.ok {
            0
        } else {
            1
        }
    }
}

/// Captured outcome of a full invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Invocation {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parse, run and render, without touching the process streams.
pub fn run<I, T>(argv: I) -> Invocation
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Invocation {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Invocation {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    match execute(&cli.command) {
        Ok(exec) => Invocation {
            code: exec.exit_code(),
            stdout: exec.render(cli.format()),
            stderr: String::new(),
        },
        Err(e) => Invocation {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}
