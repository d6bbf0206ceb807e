use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use vecmetric::builtin::{self, list_builtin_suites};
use vecmetric::runner::{run, RunOptions, RunReport};
use vecmetric::scenario::{load_scenario, Scenario};

#[derive(Parser)]
#[command(name = "vecmetric", version, about = "Check vector metric scenarios with exact arithmetic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file.
    Run {
        file: PathBuf,
        #[command(flatten)]
        opts: RunFlags,
    },
    /// List the bundled scenarios.
    List,
    /// Run a bundled scenario by name.
    RunBuiltin {
        name: String,
        #[command(flatten)]
        opts: RunFlags,
    },
}

#[derive(Args)]
struct RunFlags {
    /// Omit timing fields so reports are byte-identical across runs.
    #[arg(long)]
    no_timing: bool,
    /// Also write the JSON report to this path.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Horizon for re-validating witnesses by direct evaluation.
    #[arg(long, default_value_t = 1000)]
    max_n: u64,
}

const LOAD_ERROR: u8 = 3;

fn execute(scenario: Scenario, flags: &RunFlags) -> ExitCode {
    let report = run(
        &scenario,
        RunOptions {
            max_n: flags.max_n,
            timing: !flags.no_timing,
        },
    );
    emit(&report, flags)
}

fn emit(report: &RunReport, flags: &RunFlags) -> ExitCode {
    let json = report.to_json();
    for c in &report.checks {
        eprintln!("{:<12} {}: {}", c.report.verdict, c.name, c.report.summary);
    }
    eprintln!("status: {}", report.status);
    println!("{json}");
    if let Some(path) = &flags.report {
        if let Err(e) = std::fs::write(path, format!("{json}\n")) {
            eprintln!("cannot write report to {}: {e}", path.display());
            return ExitCode::from(LOAD_ERROR);
        }
    }
    ExitCode::from(report.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::List => {
            for b in list_builtin_suites() {
                println!("{:<38} {:<16} {}", b.name, b.category.label(), b.description);
            }
            ExitCode::SUCCESS
        }
        Command::Run { file, opts } => match load_scenario(&file) {
            Ok(s) => execute(s, &opts),
            Err(e) => {
                eprintln!("load error: {e}");
                ExitCode::from(LOAD_ERROR)
            }
        },
        Command::RunBuiltin { name, opts } => match builtin::load_builtin(&name) {
            Ok(s) => execute(s, &opts),
            Err(e) => {
                eprintln!("load error: {e}");
                ExitCode::from(LOAD_ERROR)
            }
        },
    }
}
