//! `yanglab` command-line driver.
//!
//! Exit status: 0 when every requested check passes, 1 when one fails,
//! 2 on configuration or construction errors.

mod config;
mod pipeline;
mod report;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::{ConfigArgs, RunConfig};
use pipeline::Stage;

#[derive(Parser)]
#[command(
    name = "yanglab",
    version,
    about = "Exact checks for orthogonal and symplectic Yangian L-operators"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Yang-Baxter equation for the fundamental R-matrix.
    RCheck(ConfigArgs),
    /// Build an L-operator and describe its representation space.
    Construct(ConfigArgs),
    /// RLL, Lie, adjoint, constraint and center checks.
    Verify(ConfigArgs),
    /// Highest-weight data and weight conditions.
    Weights(ConfigArgs),
    /// Drinfeld polynomial test.
    Finiteness(ConfigArgs),
    /// Every stage.
    All(ConfigArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (stage, args) = match cli.command {
        Command::RCheck(a) => (Stage::RCheck, a),
        Command::Construct(a) => (Stage::Construct, a),
        Command::Verify(a) => (Stage::Verify, a),
        Command::Weights(a) => (Stage::Weights, a),
        Command::Finiteness(a) => (Stage::Finiteness, a),
        Command::All(a) => (Stage::All, a),
    };
    match execute(stage, args) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("yanglab: {msg}");
            ExitCode::from(2)
        }
    }
}

fn execute(stage: Stage, args: ConfigArgs) -> Result<bool, String> {
    let cfg = RunConfig::resolve(args).map_err(|e| e.to_string())?;
    if let Some(n) = cfg.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| e.to_string())?;
    }
    let report = pipeline::run(stage, &cfg).map_err(|e| e.to_string())?;
    match cfg.json.as_deref() {
        Some(p) if p.as_os_str() == "-" => {
            let text = serde_json::to_string_pretty(&report).map_err(|e| e.to_string())?;
            println!("{text}");
        }
        Some(p) => {
            let text = serde_json::to_string_pretty(&report).map_err(|e| e.to_string())?;
            std::fs::write(p, text + "\n")
                .map_err(|e| format!("cannot write {}: {e}", p.display()))?;
            println!("{}", report.summary());
        }
        None => println!("{}", report.summary()),
    }
    Ok(report.pass)
}
