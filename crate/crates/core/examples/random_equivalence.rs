//! Scenario files and reports: run every command on a catalog entry and a
//! seeded random coupling through the same entry point the CLI uses.

use poisson_leaf::error::Result;
use poisson_leaf::io::{from_json, to_json};
use poisson_leaf::scenario::{render_text, run, Command, Params, Report, Scenario};

fn main() -> Result<()> {
    let sc = Scenario::from_example("so3_curved", Command::Gauge)?;
    println!("scenario file:\n{}", to_json(&sc));
    for command in Command::ALL {
        let sc = Scenario::from_example("so3_curved", command)?;
        match run(&sc) {
            Ok(report) => {
                let back: Report = from_json(&to_json(&report))?;
                assert_eq!(back, report);
                print!("{}", render_text(&report));
            }
            Err(e) => println!("{}: {e}", command.name()),
        }
    }
    for seed in 0..6 {
        let sc = Scenario {
            command: Some(Command::Check),
            params: Params {
                seed: Some(seed),
                ..Params::default()
            },
            ..Scenario::default()
        };
        let report = run(&sc)?;
        println!("seed {seed}: exit code {}", report.exit_code);
    }
    Ok(())
}
