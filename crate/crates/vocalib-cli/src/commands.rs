pub mod aggregate;
pub mod calibrate;
pub mod elicit;
pub mod parse;
pub mod report;

use vocalib_core::{ParseStatus, PredictionRecord};

/// Outcome histogram shared by several command summaries.
pub fn status_counts(records: &[PredictionRecord]) -> serde_json::Value {
    let mut parsed = 0usize;
    let mut refused = 0usize;
    let mut malformed = 0usize;
    let mut unknown_labels = 0usize;
    let mut empty = 0usize;
    for rec in records {
        match rec.parse.status {
            ParseStatus::Parsed => parsed += 1,
            ParseStatus::Refused => refused += 1,
            ParseStatus::Malformed => malformed += 1,
            ParseStatus::UnknownLabels => unknown_labels += 1,
            ParseStatus::Empty => empty += 1,
        }
    }
    serde_json::json!({
        "total": records.len(),
        "parsed": parsed,
        "refused": refused,
        "malformed": malformed,
        "unknown_labels": unknown_labels,
        "empty": empty,
    })
}
