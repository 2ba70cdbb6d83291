use std::process::ExitCode;

use clap::Parser;
use g2g_cli::config::{Cli, JobConfig};
use g2g_cli::defaults::Defaults;
use g2g_cli::error::CliError;

fn main() -> ExitCode {
    match try_main() {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("g2g: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn try_main() -> Result<i32, CliError> {
    let cli = Cli::parse();
    let job = JobConfig::from_cli(cli, Defaults::load()?)?;
    let (report, code) = g2g_cli::run(&job)?;
    let text = report.render(job.format);
    match &job.out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(code)
}
