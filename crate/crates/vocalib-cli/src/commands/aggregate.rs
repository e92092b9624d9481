//! `vocalib aggregate`: intersect per-model record files on the texts every
//! model answered parseably, writing one equal-length file per model so
//! later comparisons run on identical inputs.

use std::collections::BTreeMap;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::Args;
use vocalib_core::{intersect_by_text, load_records, save_records, DatasetError};

use crate::config::{CommonOpts, RunConfig};

#[derive(Debug, Args)]
pub struct AggregateArgs {
    #[command(flatten)]
    pub common: CommonOpts,

    /// Two or more per-model record files (JSONL); the file stem names the model
    #[arg(required = true, num_args = 2.., value_name = "PATH")]
    pub inputs: Vec<PathBuf>,

    /// Directory receiving one intersected file per model
    #[arg(long, value_name = "PATH")]
    pub out_dir: PathBuf,
}

pub fn run(args: AggregateArgs) -> Result<()> {
    let cfg = RunConfig::resolve(&args.common)?;
    let mut per_model: BTreeMap<String, _> = BTreeMap::new();
    for path in &args.inputs {
        let stem = path
            .file_stem()
            .and_then(|s| s.to_str())
            .map(str::to_string)
            .with_context(|| format!("no usable file stem in {}", path.display()))?;
        let records = load_records(path, &cfg.task)
            .with_context(|| format!("loading records from {}", path.display()))?;
        if per_model.insert(stem.clone(), records).is_some() {
            bail!("two inputs share the model name {stem:?}; rename one file");
        }
    }

    let intersected = match intersect_by_text(&per_model) {
        Ok(map) => map,
        Err(DatasetError::EmptyIntersection) => {
            eprintln!("warning: no text was answered parseably by every model; nothing to write");
            std::process::exit(1);
        }
        Err(e) => return Err(e.into()),
    };

    std::fs::create_dir_all(&args.out_dir)
        .with_context(|| format!("creating {}", args.out_dir.display()))?;
    let mut kept = serde_json::Map::new();
    for (model, records) in &intersected {
        let out = args.out_dir.join(format!("{model}.jsonl"));
        save_records(&out, records)
            .with_context(|| format!("writing records to {}", out.display()))?;
        kept.insert(model.clone(), serde_json::json!(records.len()));
    }
    let summary = serde_json::json!({
        "models": intersected.len(),
        "records_per_model": kept,
        "out_dir": args.out_dir.display().to_string(),
    });
    println!("{}", serde_json::to_string_pretty(&summary)?);
    Ok(())
}
