//! Shared run configuration: defaults, the `--config` JSON file, and the
//! flag overrides layered on top. Precedence is flags > config file >
//! defaults, resolved once before any command does work.

use std::fs;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};
use serde::Deserialize;
use vocalib_core::{CRule, CalibrationMode, Objective, SearchConfig, Split, TaskSpec};

/// Values used when neither a flag nor the config file speaks.
pub mod defaults {
    pub const TASK: &str = "imdb";
    pub const M_BINS: usize = 10;
    pub const TAU_MIN: f64 = 0.05;
    pub const TAU_MAX: f64 = 10.0;
    pub const GRID_POINTS: usize = 400;
    pub const DECIMALS: u8 = 2;
    pub const SEED: u64 = 0;
    pub const C_FIXED: f64 = 0.0;
    // objective: nll; mode: invert-softmax; c-rule: mean
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ObjectiveArg {
    Nll,
    Ece,
}

impl From<ObjectiveArg> for Objective {
    fn from(arg: ObjectiveArg) -> Self {
        match arg {
            ObjectiveArg::Nll => Objective::Nll,
            ObjectiveArg::Ece => Objective::Ece,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    InvertSoftmax,
    ResoftmaxBaseline,
}

impl From<ModeArg> for CalibrationMode {
    fn from(arg: ModeArg) -> Self {
        match arg {
            ModeArg::InvertSoftmax => CalibrationMode::InvertSoftmax,
            ModeArg::ResoftmaxBaseline => CalibrationMode::ResoftmaxBaseline,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CRuleArg {
    Mean,
    Fixed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SplitArg {
    Validation,
    Test,
}

impl From<SplitArg> for Split {
    fn from(arg: SplitArg) -> Self {
        match arg {
            SplitArg::Validation => Split::Validation,
            SplitArg::Test => Split::Test,
        }
    }
}

/// Flags every subcommand accepts. Any of these may also come from the
/// `--config` JSON file; an explicit flag always wins.
#[derive(Debug, Args)]
pub struct CommonOpts {
    /// JSON config file supplying any shared field; flags override it
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,

    /// Built-in task: imdb, emotion, or massive [default: imdb]
    #[arg(long)]
    pub task: Option<String>,

    /// Custom comma-separated label set (overrides --task)
    #[arg(long, value_delimiter = ',')]
    pub labels: Option<Vec<String>>,

    /// Shorthand for labels label_0..label_{K-1} (overrides --task)
    #[arg(long)]
    pub n_classes: Option<usize>,

    /// Positive class for PR and calibration-curve outputs
    #[arg(long)]
    pub positive_label: Option<String>,

    /// Reliability bin count [default: 10]
    #[arg(long)]
    pub m_bins: Option<usize>,

    /// Tuning objective [default: nll]
    #[arg(long, value_enum)]
    pub objective: Option<ObjectiveArg>,

    /// How distributions become logits before scaling [default: invert-softmax]
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,

    /// Offset rule during logit recovery [default: mean]
    #[arg(long, value_enum)]
    pub c_rule: Option<CRuleArg>,

    /// Constant used when --c-rule is fixed [default: 0.0]
    #[arg(long)]
    pub c_fixed: Option<f64>,

    /// Lower edge of the temperature search [default: 0.05]
    #[arg(long)]
    pub tau_min: Option<f64>,

    /// Upper edge of the temperature search [default: 10.0]
    #[arg(long)]
    pub tau_max: Option<f64>,

    /// Log-grid resolution of the search [default: 400]
    #[arg(long)]
    pub grid_points: Option<usize>,

    /// Verbalized decimal places for the mock, 1 or 2 [default: 2]
    #[arg(long)]
    pub decimals: Option<u8>,

    /// Seed for every random draw [default: 0]
    #[arg(long)]
    pub seed: Option<u64>,
}

/// The `--config` file mirror of [`CommonOpts`]. Unknown keys are rejected
/// so typos fail before any work happens.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    task: Option<String>,
    labels: Option<Vec<String>>,
    n_classes: Option<usize>,
    positive_label: Option<String>,
    m_bins: Option<usize>,
    objective: Option<Objective>,
    mode: Option<CalibrationMode>,
    /// Core serialization: "MeanRule" or {"Fixed": 0.5}.
    c_rule: Option<CRule>,
    tau_min: Option<f64>,
    tau_max: Option<f64>,
    grid_points: Option<usize>,
    decimals: Option<u8>,
    seed: Option<u64>,
}

/// Everything a command needs, fully resolved and validated.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub task: TaskSpec,
    pub m_bins: usize,
    pub objective: Objective,
    pub mode: CalibrationMode,
    pub c_rule: CRule,
    pub search: SearchConfig,
    pub decimals: u8,
    pub seed: u64,
}

fn mock_labels(k: usize) -> Vec<String> {
    (0..k).map(|i| format!("label_{i}")).collect()
}

impl RunConfig {
    pub fn resolve(opts: &CommonOpts) -> Result<Self> {
        let file: FileConfig = match &opts.config {
            Some(path) => {
                let raw = fs::read_to_string(path)
                    .with_context(|| format!("reading config file {}", path.display()))?;
                serde_json::from_str(&raw)
                    .with_context(|| format!("invalid config file {}", path.display()))?
            }
            None => FileConfig::default(),
        };

        let positive = opts.positive_label.clone().or(file.positive_label);
        // task precedence: explicit labels > n_classes shorthand > task name
        let task = if let Some(labels) = opts.labels.clone().or(file.labels) {
            TaskSpec::new("custom", labels, positive)?
        } else if let Some(k) = opts.n_classes.or(file.n_classes) {
            if k < 2 {
                bail!("--n-classes must be at least 2, got {k}");
            }
            TaskSpec::new("mock", mock_labels(k), positive)?
        } else {
            let name = opts
                .task
                .clone()
                .or(file.task)
                .unwrap_or_else(|| defaults::TASK.to_string());
            let base = TaskSpec::builtin(&name).ok_or_else(|| {
                anyhow::anyhow!("unknown task {name:?}; built-ins are imdb, emotion, massive")
            })?;
            match positive {
                Some(p) => TaskSpec::new(base.name, base.labels, Some(p))?,
                None => base,
            }
        };

        let c_rule = match opts.c_rule {
            Some(CRuleArg::Mean) => CRule::MeanRule,
            Some(CRuleArg::Fixed) => {
                CRule::Fixed(opts.c_fixed.unwrap_or(defaults::C_FIXED))
            }
            None => match (opts.c_fixed, file.c_rule) {
                (Some(c), _) => CRule::Fixed(c),
                (None, Some(rule)) => rule,
                (None, None) => CRule::MeanRule,
            },
        };

        let config = Self {
            task,
            m_bins: opts.m_bins.or(file.m_bins).unwrap_or(defaults::M_BINS),
            objective: opts
                .objective
                .map(Objective::from)
                .or(file.objective)
                .unwrap_or(Objective::Nll),
            mode: opts
                .mode
                .map(CalibrationMode::from)
                .or(file.mode)
                .unwrap_or(CalibrationMode::InvertSoftmax),
            c_rule,
            search: SearchConfig {
                tau_min: opts.tau_min.or(file.tau_min).unwrap_or(defaults::TAU_MIN),
                tau_max: opts.tau_max.or(file.tau_max).unwrap_or(defaults::TAU_MAX),
                grid_points: opts
                    .grid_points
                    .or(file.grid_points)
                    .unwrap_or(defaults::GRID_POINTS),
                ece_bins: opts.m_bins.or(file.m_bins).unwrap_or(defaults::M_BINS),
            },
            decimals: opts.decimals.or(file.decimals).unwrap_or(defaults::DECIMALS),
            seed: opts.seed.or(file.seed).unwrap_or(defaults::SEED),
        };
        config.validate()?;
        Ok(config)
    }

    fn validate(&self) -> Result<()> {
        if self.m_bins == 0 {
            bail!("m_bins must be at least 1");
        }
        if !(self.search.tau_min > 0.0 && self.search.tau_min < self.search.tau_max) {
            bail!(
                "temperature search range must satisfy 0 < tau_min < tau_max, got [{}, {}]",
                self.search.tau_min,
                self.search.tau_max
            );
        }
        if self.search.grid_points < 2 {
            bail!("grid_points must be at least 2, got {}", self.search.grid_points);
        }
        if !(self.decimals == 1 || self.decimals == 2) {
            bail!("decimals must be 1 or 2, got {}", self.decimals);
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write as _;

    fn opts() -> CommonOpts {
        CommonOpts {
            config: None,
            task: None,
            labels: None,
            n_classes: None,
            positive_label: None,
            m_bins: None,
            objective: None,
            mode: None,
            c_rule: None,
            c_fixed: None,
            tau_min: None,
            tau_max: None,
            grid_points: None,
            decimals: None,
            seed: None,
        }
    }

    #[test]
    fn defaults_resolve_to_the_documented_values() {
        let cfg = RunConfig::resolve(&opts()).unwrap();
        assert_eq!(cfg.task.name, "imdb");
        assert_eq!(cfg.m_bins, 10);
        assert_eq!(cfg.objective, Objective::Nll);
        assert_eq!(cfg.mode, CalibrationMode::InvertSoftmax);
        assert_eq!(cfg.c_rule, CRule::MeanRule);
        assert_eq!(cfg.search, SearchConfig::default());
        assert_eq!(cfg.decimals, 2);
        assert_eq!(cfg.seed, 0);
        assert_eq!(cfg.task.positive_label.as_deref(), Some("positive"));
    }

    #[test]
    fn flags_override_the_config_file() {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        write!(file, r#"{{"m_bins": 5, "seed": 9, "objective": "ece"}}"#).unwrap();
        let mut o = opts();
        o.config = Some(file.path().to_path_buf());
        o.m_bins = Some(7);
        let cfg = RunConfig::resolve(&o).unwrap();
        assert_eq!(cfg.m_bins, 7); // flag wins
        assert_eq!(cfg.seed, 9); // file fills the gap
        assert_eq!(cfg.objective, Objective::Ece);
    }

    #[test]
    fn unknown_config_keys_are_rejected() {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        write!(file, r#"{{"m_bnis": 5}}"#).unwrap();
        let mut o = opts();
        o.config = Some(file.path().to_path_buf());
        let err = RunConfig::resolve(&o).unwrap_err();
        assert!(format!("{err:#}").contains("m_bnis"), "{err:#}");
    }

    #[test]
    fn n_classes_builds_the_mock_label_set() {
        let mut o = opts();
        o.n_classes = Some(3);
        o.positive_label = Some("label_0".into());
        let cfg = RunConfig::resolve(&o).unwrap();
        assert_eq!(cfg.task.labels, vec!["label_0", "label_1", "label_2"]);
        assert_eq!(cfg.task.positive_label.as_deref(), Some("label_0"));
    }

    #[test]
    fn fixed_c_rule_reads_the_constant_flag() {
        let mut o = opts();
        o.c_rule = Some(CRuleArg::Fixed);
        o.c_fixed = Some(1.5);
        let cfg = RunConfig::resolve(&o).unwrap();
        assert_eq!(cfg.c_rule, CRule::Fixed(1.5));
    }

    #[test]
    fn invalid_search_range_is_rejected_before_work() {
        let mut o = opts();
        o.tau_min = Some(3.0);
        o.tau_max = Some(1.0);
        assert!(RunConfig::resolve(&o).is_err());
    }
}
