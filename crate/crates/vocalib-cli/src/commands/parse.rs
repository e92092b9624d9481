//! `vocalib parse`: re-run the reply parser over a records file, summarize
//! the outcome histogram, and optionally rewrite the file with refreshed
//! parse results.

use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::Args;
use vocalib_core::{load_records, save_records, success_rate, ParseStatus, SUM_TOLERANCE};

use crate::commands::status_counts;
use crate::config::{CommonOpts, RunConfig};

#[derive(Debug, Args)]
pub struct ParseArgs {
    #[command(flatten)]
    pub common: CommonOpts,

    /// Input records file (JSONL)
    #[arg(long, value_name = "PATH")]
    pub input: PathBuf,

    /// Rewrite the records here with refreshed parse outcomes
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

pub fn run(args: ParseArgs) -> Result<()> {
    let cfg = RunConfig::resolve(&args.common)?;
    let records = load_records(&args.input, &cfg.task)
        .with_context(|| format!("loading records from {}", args.input.display()))?;

    let mut summary = status_counts(&records);
    let raw_sums: Vec<f64> = records
        .iter()
        .filter(|r| r.parse.status == ParseStatus::Parsed)
        .filter_map(|r| r.parse.raw_sum)
        .collect();
    if !raw_sums.is_empty() {
        summary["sum_success_rate"] =
            serde_json::json!(success_rate(&raw_sums, SUM_TOLERANCE)?);
    }

    if let Some(out) = &args.out {
        save_records(out, &records)
            .with_context(|| format!("writing records to {}", out.display()))?;
        summary["out"] = serde_json::Value::String(out.display().to_string());
    }
    println!("{}", serde_json::to_string_pretty(&summary)?);
    Ok(())
}
