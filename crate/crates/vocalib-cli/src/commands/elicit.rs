//! `vocalib elicit`: ask a model for a probability distribution over the
//! task labels for every input text, or generate the same artifact from the
//! built-in synthetic model with `--mock` (also exposed as `mock-gen`).

use std::fs;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::Args;
use serde::Deserialize;
use vocalib_core::{
    canonicalize_label, elicit_batch, mock_generate, parse_response, save_records,
    EndpointConfig, GenConfig, HttpChatClient, MessageLayout, MockLlmConfig, PredictionRecord,
    PromptTemplate, RetryPolicy, Split,
};

use crate::commands::status_counts;
use crate::config::{CommonOpts, RunConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum LayoutArg {
    /// One user message holding instructions and text
    Single,
    /// Instructions as a system message, text as the user message
    Pair,
}

impl From<LayoutArg> for MessageLayout {
    fn from(arg: LayoutArg) -> Self {
        match arg {
            LayoutArg::Single => MessageLayout::SingleUserMessage,
            LayoutArg::Pair => MessageLayout::SystemPlusUser,
        }
    }
}

#[derive(Debug, Args)]
pub struct ElicitArgs {
    #[command(flatten)]
    pub common: CommonOpts,

    /// Use the built-in synthetic model instead of an HTTP endpoint
    #[arg(long)]
    pub mock: bool,

    /// Records to generate in mock mode
    #[arg(long, default_value_t = 1000)]
    pub n: usize,

    /// Mock latent-logit multiplier; above 1 verbalizes overconfidently
    #[arg(long, default_value_t = 1.0)]
    pub sharpness: f64,

    /// Mock fraction of prose-only (unparseable) replies
    #[arg(long, default_value_t = 0.0)]
    pub malformed_rate: f64,

    /// Mock Gaussian noise on the top component before rounding
    #[arg(long, default_value_t = 0.0)]
    pub sum_noise: f64,

    /// Mock target argmax accuracy of the latent scores
    #[arg(long, default_value_t = 0.8)]
    pub latent_accuracy: f64,

    /// Chat-completions base URL (endpoint mode)
    #[arg(long)]
    pub base_url: Option<String>,

    /// Environment variable holding the bearer token (never a flag)
    #[arg(long, default_value = "VOCALIB_API_KEY")]
    pub credential_env: String,

    /// HTTP timeout per request, seconds
    #[arg(long, default_value_t = 30)]
    pub timeout_secs: u64,

    /// Model identifier sent with each request (endpoint mode)
    #[arg(long)]
    pub model_id: Option<String>,

    /// Sampling temperature sent with each request
    #[arg(long, default_value_t = 1.0)]
    pub token_temperature: f64,

    /// Completion budget sent with each request
    #[arg(long, default_value_t = 256)]
    pub max_tokens: u32,

    /// Prompt layout
    #[arg(long, value_enum, default_value_t = LayoutArg::Single)]
    pub layout: LayoutArg,

    /// Attempts per text; retries rephrase the format instruction
    #[arg(long, default_value_t = 3)]
    pub max_attempts: usize,

    /// Concurrent in-flight requests cap
    #[arg(long, default_value_t = 4)]
    pub max_in_flight: usize,

    /// Input texts JSONL: {"text", "gold_label", optional "split"} (endpoint mode)
    #[arg(long, value_name = "PATH")]
    pub input: Option<PathBuf>,

    /// Output records file (JSONL)
    #[arg(long, value_name = "PATH")]
    pub out: PathBuf,
}

/// One line of the endpoint-mode input file. Records without an explicit
/// split alternate validation/test by line index, matching the mock.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct InputLine {
    text: String,
    gold_label: String,
    split: Option<Split>,
}

pub fn run(args: ElicitArgs) -> Result<()> {
    let cfg = RunConfig::resolve(&args.common)?;
    let records = if args.mock {
        generate_mock(&args, &cfg)?
    } else {
        query_endpoint(&args, &cfg)?
    };
    save_records(&args.out, &records)
        .with_context(|| format!("writing records to {}", args.out.display()))?;
    let mut summary = status_counts(&records);
    summary["out"] = serde_json::Value::String(args.out.display().to_string());
    println!("{}", serde_json::to_string_pretty(&summary)?);
    Ok(())
}

fn generate_mock(args: &ElicitArgs, cfg: &RunConfig) -> Result<Vec<PredictionRecord>> {
    let mock = MockLlmConfig {
        n_classes: cfg.task.n_classes(),
        sharpness_beta: args.sharpness,
        decimals: cfg.decimals,
        malformed_rate: args.malformed_rate,
        sum_noise_sigma: args.sum_noise,
        latent_accuracy: args.latent_accuracy,
        seed: cfg.seed,
        labels: Some(cfg.task.labels.clone()),
    };
    Ok(mock_generate(&mock, args.n)?)
}

fn query_endpoint(args: &ElicitArgs, cfg: &RunConfig) -> Result<Vec<PredictionRecord>> {
    let base_url = match &args.base_url {
        Some(url) => url.clone(),
        None => bail!("endpoint mode needs --base-url (or pass --mock)"),
    };
    let model_id = match &args.model_id {
        Some(id) => id.clone(),
        None => bail!("endpoint mode needs --model-id"),
    };
    // Fail on a missing credential before any file or network work.
    let client = HttpChatClient::new(EndpointConfig {
        base_url,
        credential_env: args.credential_env.clone(),
        timeout_secs: args.timeout_secs,
    })?;

    let input = match &args.input {
        Some(path) => path,
        None => bail!("endpoint mode needs --input with one JSON object per line"),
    };
    let raw = fs::read_to_string(input)
        .with_context(|| format!("reading input texts from {}", input.display()))?;
    let mut lines = Vec::new();
    for (i, line) in raw.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let parsed: InputLine = serde_json::from_str(line)
            .with_context(|| format!("{}:{}: bad input line", input.display(), i + 1))?;
        lines.push(parsed);
    }
    if lines.is_empty() {
        bail!("no input texts in {}", input.display());
    }

    let template = PromptTemplate::builtin(&cfg.task.name, args.layout.into()).ok_or_else(|| {
        anyhow::anyhow!(
            "no built-in prompt for task {:?}; built-ins are imdb, emotion, massive",
            cfg.task.name
        )
    })?;
    let policy = RetryPolicy {
        max_attempts: args.max_attempts,
        ..RetryPolicy::default()
    };
    let gen = GenConfig {
        model_id,
        token_temperature: args.token_temperature,
        max_tokens: args.max_tokens,
    };

    let texts: Vec<String> = lines.iter().map(|l| l.text.clone()).collect();
    let replies = elicit_batch(
        &client,
        &template,
        &texts,
        &cfg.task.labels,
        &policy,
        &gen,
        args.max_in_flight,
    );

    let mut records = Vec::with_capacity(lines.len());
    for (i, (line, reply)) in lines.into_iter().zip(replies).enumerate() {
        let raw = reply.with_context(|| format!("eliciting a reply for input line {}", i + 1))?;
        let parse = parse_response(&raw.text, &cfg.task.labels);
        let split = line.split.unwrap_or(if i % 2 == 0 {
            Split::Validation
        } else {
            Split::Test
        });
        records.push(PredictionRecord {
            text: line.text,
            gold_label: canonicalize_label(&line.gold_label),
            raw_response: Some(raw),
            parse,
            split,
            calibrated: None,
        });
    }
    Ok(records)
}
