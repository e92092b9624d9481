//! `vocalib report`: evaluate one split before and after calibration and
//! emit reports plus tidy plot data (reliability bins, confidence
//! histograms, calibration curves, PR curves), optionally with standalone
//! SVG reliability diagrams.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::Args;
use vocalib_core::{
    calibrated_predictions, calibration_curve, load_records, pr_curve, raw_predictions,
    reliability_report, EvalReport, Prediction, Split,
};

use crate::config::{CommonOpts, RunConfig, SplitArg};
use crate::svg::reliability_svg;

#[derive(Debug, Args)]
pub struct ReportArgs {
    #[command(flatten)]
    pub common: CommonOpts,

    /// Input records file (JSONL), usually the calibrate output
    #[arg(long, value_name = "PATH")]
    pub input: PathBuf,

    /// Which split to evaluate
    #[arg(long, value_enum, default_value_t = SplitArg::Test)]
    pub split: SplitArg,

    /// Directory receiving every report artifact
    #[arg(long, value_name = "PATH")]
    pub out_dir: PathBuf,

    /// Additionally render reliability diagrams as standalone SVG
    #[arg(long)]
    pub svg: bool,
}

pub fn run(args: ReportArgs) -> Result<()> {
    let cfg = RunConfig::resolve(&args.common)?;
    let records = load_records(&args.input, &cfg.task)
        .with_context(|| format!("loading records from {}", args.input.display()))?;
    let split: Split = args.split.into();

    let uncal = raw_predictions(&records, split);
    if uncal.is_empty() {
        bail!("empty dataset: no parsed records in the {split:?} split");
    }
    let cal = calibrated_predictions(&records, split);

    fs::create_dir_all(&args.out_dir)
        .with_context(|| format!("creating {}", args.out_dir.display()))?;

    let report_u = write_side(&args, &cfg, &uncal, "uncalibrated")?;
    let report_c = if cal.is_empty() {
        None
    } else {
        Some(write_side(&args, &cfg, &cal, "calibrated")?)
    };

    let key_metrics = |r: &EvalReport| {
        serde_json::json!({
            "n": r.n,
            "accuracy": r.accuracy,
            "nll": r.nll,
            "ece": r.ece,
            "mce": r.mce,
            "avg_confidence": r.avg_confidence,
            "success_rate": r.success_rate,
        })
    };
    let summary = serde_json::json!({
        "split": split,
        "out_dir": args.out_dir.display().to_string(),
        "uncalibrated": key_metrics(&report_u),
        "calibrated": report_c.as_ref().map(key_metrics),
    });
    println!("{}", serde_json::to_string_pretty(&summary)?);
    Ok(())
}

/// Write every artifact for one side (uncalibrated or calibrated) and
/// return its report.
fn write_side(
    args: &ReportArgs,
    cfg: &RunConfig,
    preds: &[Prediction],
    side: &str,
) -> Result<EvalReport> {
    let report = reliability_report(preds, cfg.m_bins)?;
    let dir = &args.out_dir;

    write_file(dir, &format!("report_{side}.json"), &report.to_json())?;
    write_file(dir, &format!("report_{side}.csv"), &report.to_csv())?;

    let mut reliability = String::from("bin_index,lower,upper,count,accuracy,confidence\n");
    let mut histogram = String::from("bin_index,lower,upper,count\n");
    for b in &report.bins {
        let _ = writeln!(
            reliability,
            "{},{},{},{},{},{}",
            b.bin_index, b.lower, b.upper, b.count, b.accuracy, b.confidence
        );
        let _ = writeln!(histogram, "{},{},{},{}", b.bin_index, b.lower, b.upper, b.count);
    }
    write_file(dir, &format!("reliability_{side}.csv"), &reliability)?;
    write_file(dir, &format!("histogram_{side}.csv"), &histogram)?;

    if let Some(positive) = &cfg.task.positive_label {
        let mut pr = String::from("threshold,precision,recall\n");
        for p in pr_curve(preds, positive)? {
            let _ = writeln!(pr, "{},{},{}", p.threshold, p.precision, p.recall);
        }
        write_file(dir, &format!("pr_{side}.csv"), &pr)?;

        let mut curve = String::from(
            "bin_index,lower,upper,count,mean_predicted,fraction_positive\n",
        );
        for b in calibration_curve(preds, positive, cfg.m_bins)? {
            let _ = writeln!(
                curve,
                "{},{},{},{},{},{}",
                b.bin_index, b.lower, b.upper, b.count, b.mean_predicted, b.fraction_positive
            );
        }
        write_file(dir, &format!("calibration_curve_{side}.csv"), &curve)?;
    }

    if args.svg {
        let svg = reliability_svg(&report.bins, &format!("reliability ({side})"));
        write_file(dir, &format!("reliability_{side}.svg"), &svg)?;
    }
    Ok(report)
}

fn write_file(dir: &Path, name: &str, content: &str) -> Result<()> {
    let path = dir.join(name);
    fs::write(&path, content).with_context(|| format!("writing {}", path.display()))
}
