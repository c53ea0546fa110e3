//! Batch driver for the `depthzero` engine: JSON input documents, command
//! dispatch, catalog sweeps and machine-readable reports.

pub mod commands;
pub mod input;
pub mod report;
pub mod sweep;

use thiserror::Error;

pub use commands::{run_command, Command, RunOptions};
pub use input::{parse_input, InputDocument, SchemaError};
pub use report::{Case, CaseVerdict, Report, Verdict};
pub use sweep::{sweep, SweepOptions};

/// Process exit codes.
pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

/// `0` if every case passed or was not comparable, `1` otherwise.
pub fn exit_code(report: &Report) -> i32 {
    if report.passed() {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid input:\n{}", .0.iter().map(|e| format!("  {e}")).collect::<Vec<_>>().join("\n"))]
    Input(Vec<SchemaError>),
    #[error("missing section: {0}")]
    Missing(&'static str),
    #[error("{context}: {source}")]
    Engine { context: String, source: depthzero::Error },
    #[error("invalid option: {0}")]
    Options(String),
    #[error("{0}")]
    Io(String),
}
