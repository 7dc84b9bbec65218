use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ldt_cli::error::verdict_code;
use ldt_cli::scenario::{resolve_output, to_pretty_json, write_report};
use ldt_cli::{run_file, sweep, CliError, Command};

#[derive(Parser)]
#[command(name = "ldt", version, about = "Checks for the Lebesgue differentiation toolkit")]
struct Cli {
    #[command(subcommand)]
    action: Action,
}

#[derive(Subcommand)]
enum Action {
    /// Run a scenario file and write its report.
    Run {
        scenario: PathBuf,
        /// Report path, overriding the scenario's `output_path`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a check on seeded random instances.
    Sweep {
        command: Command,
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn execute(action: Action) -> Result<u8, CliError> {
    match action {
        Action::Run { scenario, out } => {
            let summary = run_file(&scenario, out.as_deref())?;
            println!("{} {}", if summary.pass { "PASS" } else { "FAIL" }, summary.report_path.display());
            Ok(verdict_code(summary.pass))
        }
        Action::Sweep { command, count, seed, out } => {
            let report = sweep(command, count, seed)?;
            let default = format!("sweep-{}-{seed}.json", command.name());
            let path = out.unwrap_or_else(|| resolve_output(None, &default));
            write_report(&path, &to_pretty_json(&report))?;
            println!(
                "{} {}: {}/{} hold",
                if report.pass { "PASS" } else { "FAIL" },
                command.name(),
                report.holds,
                count
            );
            Ok(verdict_code(report.pass))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.action) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("ldt: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
