use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use ecslab::config::{apply_points_file, parse_config};
use ecslab::run::{run_command, Command};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Cmd {
    /// Check the parameter constraints only
    Validate,
    /// Build the metric and verify every curvature identity
    Verify,
    /// Compute the Olszak rank at each sample point
    Rank,
    /// verify + rank for every case
    Sweep,
}

impl From<Cmd> for Command {
    fn from(c: Cmd) -> Self {
        match c {
            Cmd::Validate => Command::Validate,
            Cmd::Verify => Command::Verify,
            Cmd::Rank => Command::Rank,
            Cmd::Sweep => Command::Sweep,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "ecslab",
    version,
    about = "Exact verification of Roter ECS metrics"
)]
struct Cli {
    #[arg(value_enum)]
    command: Cmd,
    /// Config file with the cases to run
    #[arg(short = 'c', long = "config")]
    config: PathBuf,
    /// Write the JSON report here instead of stdout
    #[arg(long)]
    report: Option<PathBuf>,
    /// Points file replacing the sample points of every case
    #[arg(long)]
    points: Option<PathBuf>,
    /// Suppress the per-case summary on stderr
    #[arg(long)]
    quiet: bool,
}

fn read(path: &PathBuf) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("ecslab: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli) -> Result<u8, String> {
    let mut cases = parse_config(&read(&cli.config)?).map_err(|e| e.to_string())?;
    if let Some(points) = &cli.points {
        apply_points_file(&read(points)?, &mut cases).map_err(|e| e.to_string())?;
    }
    let report = run_command(cli.command.into(), &cases);

    if !cli.quiet {
        for case in &report.cases {
            let failed: Vec<&str> = case
                .checks
                .iter()
                .filter(|c| c.status.as_str() == "FAIL")
                .map(|c| c.name.as_str())
                .collect();
            if failed.is_empty() {
                eprintln!("{}: {}", case.id, case.overall.as_str());
            } else {
                eprintln!(
                    "{}: {} ({})",
                    case.id,
                    case.overall.as_str(),
                    failed.join("; ")
                );
            }
        }
        let s = &report.summary;
        eprintln!(
            "summary: {} pass, {} fail, {} with warnings",
            s.pass, s.fail, s.warn
        );
    }

    let json = report.to_json();
    match &cli.report {
        Some(path) => fs::write(path, json).map_err(|e| format!("{}: {e}", path.display()))?,
        None => print!("{json}"),
    }
    Ok(report.exit_code())
}
