//! Extraction of verbalized probability maps from free-form model replies.
//!
//! Models asked for "a Python dict of probabilities" reply with anything
//! from a clean `{'positive': 0.99, 'negative': 0.01}` to prose-wrapped,
//! sparse, or single-quoted variants. The parser scans for the *last*
//! brace-delimited map in the reply, reads its key/value pairs leniently,
//! and classifies the outcome. Values are kept exactly as written; nothing
//! is renormalized here, because the raw sum is itself a quantity the
//! pipeline reports on.

use crate::prob::ProbVector;
use regex::Regex;
use serde::{Deserialize, Serialize};
use std::sync::OnceLock;

/// One reply from a model, before parsing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RawResponse {
    pub text: String,
    pub model_id: String,
    pub token_temperature: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ParseStatus {
    /// A usable distribution was extracted.
    Parsed,
    /// No map, and the reply reads as a refusal.
    Refused,
    /// No usable map found (or the map was damaged).
    Malformed,
    /// A map was found but it mentions labels outside the expected set.
    UnknownLabels,
    /// The reply text was empty or whitespace.
    Empty,
}

/// Result of parsing one reply against an expected label set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParseOutcome {
    pub status: ParseStatus,
    /// Raw distribution over the expected labels, in the expected order,
    /// with missing labels at 0.0. Present only when status is `Parsed`.
    pub distribution: Option<ProbVector>,
    /// Arithmetic sum of the parsed values, exactly as written.
    pub raw_sum: Option<f64>,
}

impl ParseOutcome {
    fn status_only(status: ParseStatus) -> Self {
        Self {
            status,
            distribution: None,
            raw_sum: None,
        }
    }

    pub fn is_parsed(&self) -> bool {
        self.status == ParseStatus::Parsed
    }
}

/// Lowercase, trim, and collapse internal whitespace runs to underscores:
/// `" Audio Volume_Down "` becomes `"audio_volume_down"`.
pub fn canonicalize_label(label: &str) -> String {
    label
        .trim()
        .to_lowercase()
        .split_whitespace()
        .collect::<Vec<_>>()
        .join("_")
}

fn brace_blocks() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"\{[^{}]*\}").expect("valid regex"))
}

fn pair_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    // optional stray quotes around the key tolerate replies that drop one
    RE.get_or_init(|| {
        Regex::new(r#"['"]?\s*([^'":,{}]+?)\s*['"]?\s*:\s*([^,}]*)"#).expect("valid regex")
    })
}

fn numeric_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| {
        Regex::new(r"^[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?$").expect("valid regex")
    })
}

fn looks_like_refusal(text: &str) -> bool {
    const PHRASES: [&str; 8] = [
        "i'm sorry",
        "i am sorry",
        "i apologize",
        "i cannot",
        "i can't",
        "i won't",
        "unable to",
        "as an ai",
    ];
    let lower = text.to_lowercase();
    PHRASES.iter().any(|p| lower.contains(p))
}

/// Parse one reply against the expected label set.
///
/// The last brace-delimited map wins when a reply contains several. Keys are
/// canonicalized before matching; duplicate keys keep their last value.
pub fn parse_response(text: &str, expected_labels: &[String]) -> ParseOutcome {
    if text.trim().is_empty() {
        return ParseOutcome::status_only(ParseStatus::Empty);
    }

    let last_map = brace_blocks()
        .find_iter(text)
        .filter(|m| m.as_str().contains(':'))
        .last();
    let Some(block) = last_map else {
        let status = if looks_like_refusal(text) {
            ParseStatus::Refused
        } else {
            ParseStatus::Malformed
        };
        return ParseOutcome::status_only(status);
    };

    let interior = &block.as_str()[1..block.as_str().len() - 1];
    let mut entries: Vec<(String, f64)> = Vec::new();
    for cap in pair_re().captures_iter(interior) {
        let key = canonicalize_label(&cap[1]);
        let value = cap[2].trim();
        if !numeric_re().is_match(value) {
            // a pair with a non-numeric value means the map is damaged
            return ParseOutcome::status_only(ParseStatus::Malformed);
        }
        let Ok(v) = value.parse::<f64>() else {
            return ParseOutcome::status_only(ParseStatus::Malformed);
        };
        entries.push((key, v));
    }
    if entries.is_empty() {
        return ParseOutcome::status_only(ParseStatus::Malformed);
    }

    let canonical: Vec<String> = expected_labels.iter().map(|l| canonicalize_label(l)).collect();
    if entries.iter().any(|(k, _)| !canonical.contains(k)) {
        return ParseOutcome::status_only(ParseStatus::UnknownLabels);
    }

    // expected order, missing labels at 0.0, duplicates keep the last value
    let mut values = vec![0.0f64; expected_labels.len()];
    for (k, v) in &entries {
        let idx = canonical.iter().position(|c| c == k).expect("checked above");
        values[idx] = *v;
    }
    let raw_sum = values.iter().sum();
    match ProbVector::new(expected_labels.to_vec(), values) {
        Ok(dist) => ParseOutcome {
            status: ParseStatus::Parsed,
            distribution: Some(dist),
            raw_sum: Some(raw_sum),
        },
        // negative or non-finite values cannot form a distribution
        Err(_) => ParseOutcome::status_only(ParseStatus::Malformed),
    }
}
