use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use poisson_leaf::error::{Error, Result};
use poisson_leaf::io::{from_json, to_json};
use poisson_leaf::scenario::{render_text, run, Command, Overrides, Report, Scenario, EXIT_USAGE};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

/// Run a Poisson-structure scenario and report the result.
///
/// Exit status: 0 success, 2 verified negative result, 1 usage or parse error.
#[derive(Debug, Parser)]
#[command(name = "poisson-leaf", version)]
struct Cli {
    /// Command, overriding the scenario's: extract, reconstruct, check, split,
    /// gauge, linearize, cohomology or connection-change.
    #[arg(value_parser = Command::parse)]
    command: Option<Command>,
    /// Scenario file (JSON).
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Where to write the JSON report.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Format of the summary on standard output.
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Fiber-degree bound D for linearize and connection-change; highest
    /// degree for cohomology.
    #[arg(long)]
    max_degree: Option<u32>,
    /// Use a random coupling with this seed when the scenario has no input.
    #[arg(long)]
    seed: Option<u64>,
    /// Use a catalog entry as input.
    #[arg(long)]
    example: Option<String>,
}

fn execute(cli: &Cli) -> Result<Report> {
    let scenario = match &cli.input {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Usage(format!("cannot read {}: {e}", path.display())))?;
            from_json::<Scenario>(&text)?
        }
        None => Scenario::default(),
    };
    let scenario = scenario.with_overrides(&Overrides {
        command: cli.command,
        example: cli.example.clone(),
        max_degree: cli.max_degree,
        seed: cli.seed,
    });
    let report = run(&scenario)?;
    if let Some(path) = &cli.out {
        std::fs::write(path, to_json(&report))
            .map_err(|e| Error::Usage(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(report)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE as u8)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match execute(&cli) {
        Ok(report) => {
            let text = match cli.format {
                Format::Json => to_json(&report) + "\n",
                Format::Text => render_text(&report),
            };
            let _ = std::io::stdout().write_all(text.as_bytes());
            ExitCode::from(report.exit_code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE as u8)
        }
    }
}
