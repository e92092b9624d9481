//! `vocalib`: elicit verbalized probability distributions from language
//! models, recover logits, fit a post-hoc temperature, and report
//! calibration metrics with plot-ready data files.

mod commands;
mod config;
mod svg;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "vocalib",
    version,
    about = "Calibrate verbalized probability distributions via logit recovery and temperature scaling"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Ask a model (or the built-in mock) for label distributions
    Elicit(commands::elicit::ElicitArgs),
    /// Generate a synthetic dataset (alias of `elicit --mock`)
    MockGen(commands::elicit::ElicitArgs),
    /// Re-run the reply parser over a records file and summarize outcomes
    Parse(commands::parse::ParseArgs),
    /// Fit a temperature on the validation split and calibrate all records
    Calibrate(commands::calibrate::CalibrateArgs),
    /// Evaluate one split before/after calibration; emit reports and plot data
    Report(commands::report::ReportArgs),
    /// Intersect per-model record files on shared parseable texts
    Aggregate(commands::aggregate::AggregateArgs),
}

fn main() {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Elicit(args) => commands::elicit::run(args),
        Command::MockGen(mut args) => {
            args.mock = true;
            commands::elicit::run(args)
        }
        Command::Parse(args) => commands::parse::run(args),
        Command::Calibrate(args) => commands::calibrate::run(args),
        Command::Report(args) => commands::report::run(args),
        Command::Aggregate(args) => commands::aggregate::run(args),
    };
    if let Err(err) = result {
        eprintln!("error: {err:#}");
        std::process::exit(1);
    }
}
