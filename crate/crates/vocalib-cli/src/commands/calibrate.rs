//! `vocalib calibrate`: fit a temperature on the validation split (or load
//! a stored fit) and attach calibrated distributions to every parseable
//! record, writing both the fit and the enriched records.

use std::fs;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::Args;
use vocalib_core::{
    apply_mode, fit_temperature, load_records, raw_predictions, save_records, Split,
    TemperatureFit,
};

use crate::commands::status_counts;
use crate::config::{CommonOpts, RunConfig};

#[derive(Debug, Args)]
pub struct CalibrateArgs {
    #[command(flatten)]
    pub common: CommonOpts,

    /// Input records file (JSONL)
    #[arg(long, value_name = "PATH")]
    pub input: PathBuf,

    /// Output records file with calibrated distributions attached
    #[arg(long, value_name = "PATH")]
    pub out_records: PathBuf,

    /// Output fit file (JSON)
    #[arg(long, value_name = "PATH")]
    pub out_fit: PathBuf,

    /// Apply this stored fit instead of fitting on the validation split
    #[arg(long, value_name = "PATH")]
    pub apply_fit: Option<PathBuf>,
}

pub fn run(args: CalibrateArgs) -> Result<()> {
    let cfg = RunConfig::resolve(&args.common)?;
    let mut records = load_records(&args.input, &cfg.task)
        .with_context(|| format!("loading records from {}", args.input.display()))?;
    if records.is_empty() {
        bail!("empty dataset: {} holds no records", args.input.display());
    }

    let fit = match &args.apply_fit {
        Some(path) => {
            let raw = fs::read_to_string(path)
                .with_context(|| format!("reading fit from {}", path.display()))?;
            TemperatureFit::from_json(&raw)
                .with_context(|| format!("invalid fit file {}", path.display()))?
        }
        None => {
            let val = raw_predictions(&records, Split::Validation);
            if val.is_empty() {
                bail!("empty dataset: no parsed validation records to fit on");
            }
            fit_temperature(&val, cfg.objective, cfg.mode, cfg.c_rule, &cfg.search)?
        }
    };

    // Calibrate every parseable record on both splits; records whose
    // distribution cannot be calibrated (e.g. verbalized all-zero) stay
    // uncalibrated and are counted instead of aborting the run.
    let mut calibrated = 0usize;
    let mut uncalibratable = 0usize;
    for rec in &mut records {
        if let Some(dist) = &rec.parse.distribution {
            match apply_mode(dist, fit.tau_star, fit.mode, fit.c_rule) {
                Ok(cal) => {
                    rec.calibrated = Some(cal);
                    calibrated += 1;
                }
                Err(_) => uncalibratable += 1,
            }
        }
    }
    if calibrated == 0 {
        bail!("empty dataset: no record could be calibrated");
    }

    let fit_json = fit.to_json();
    fs::write(&args.out_fit, &fit_json)
        .with_context(|| format!("writing fit to {}", args.out_fit.display()))?;
    save_records(&args.out_records, &records)
        .with_context(|| format!("writing records to {}", args.out_records.display()))?;

    let mut summary = status_counts(&records);
    summary["tau_star"] = serde_json::json!(fit.tau_star);
    summary["objective"] = serde_json::json!(fit.objective);
    summary["objective_value"] = serde_json::json!(fit.objective_value);
    summary["mode"] = serde_json::json!(fit.mode);
    summary["calibrated"] = serde_json::json!(calibrated);
    summary["uncalibratable"] = serde_json::json!(uncalibratable);
    summary["out_records"] = serde_json::Value::String(args.out_records.display().to_string());
    summary["out_fit"] = serde_json::Value::String(args.out_fit.display().to_string());
    println!("{}", serde_json::to_string_pretty(&summary)?);
    Ok(())
}
