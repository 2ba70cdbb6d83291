//! Command-line front end: job configuration, commands and reports.

pub mod bench;
pub mod commands;
pub mod config;
pub mod defaults;
pub mod error;
pub mod report;
pub mod verify;

use config::{CommandKind, JobConfig};
use error::CliError;
use report::Report;

/// Process exit code for a completed run whose checks did not all pass.
pub const EXIT_CHECK_FAILED: i32 = 1;

/// Runs a validated job. The second value is the exit code.
pub fn run(job: &JobConfig) -> Result<(Report, i32), CliError> {
    let report = match job.command {
        CommandKind::Eval => commands::cmd_eval(job)?,
        CommandKind::Hyp => commands::cmd_hyp(job)?,
        CommandKind::Series => commands::cmd_series(job)?,
        CommandKind::Detect => commands::cmd_detect(job)?,
        CommandKind::Bench => bench::cmd_bench(job)?,
        CommandKind::Verify => {
            let input = serde_json::to_value(job).expect("job serializes");
            verify::report(&job.defaults, job.quad(), job.seed, &job.only, input)
        }
    };
    let code = match report.result.get("all_passed") {
        Some(serde_json::Value::Bool(false)) => EXIT_CHECK_FAILED,
        _ => 0,
    };
    Ok((report, code))
}
