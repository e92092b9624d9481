//! Calibration and accuracy metrics over labeled predictions.
//!
//! Conventions shared by every function here:
//! - confidence of a record = its largest probability, clamped to [0, 1]
//! - predicted label = argmax, ties broken toward the lowest label index
//! - reliability bins are equal-width over [0, 1], half-open `[lo, hi)`,
//!   last bin closed; empty bins contribute zero weight to ECE
//! - reductions run in record order, so results are deterministic
//!
//! `accuracy`, `nll`, `ece`, `mce`, `pr_curve` and `calibration_curve`
//! evaluate distributions exactly as given; pass normalized ones. Use
//! [`reliability_report`] on raw data: it normalizes internally and keeps the
//! raw sums for the sum-quality statistics.

use crate::prob::ProbVector;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Floor for probabilities fed to `ln` inside NLL.
pub const NLL_CLAMP: f64 = 1e-12;

/// Default tolerance on |sum - 1| for the distribution success rate.
pub const SUM_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MetricsError {
    #[error("no records to evaluate")]
    EmptyDataset,
    #[error("gold label {0:?} not in the prediction's label set")]
    LabelMismatch(String),
    #[error("label {0:?} not in the prediction's label set")]
    UnknownLabel(String),
    #[error("need at least 1 bin, got {0}")]
    InvalidBinCount(usize),
}

/// One scored prediction: the distribution the model produced (raw or
/// calibrated) and the gold label it is judged against.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Prediction {
    pub dist: ProbVector,
    pub gold: String,
}

impl Prediction {
    pub fn new(dist: ProbVector, gold: impl Into<String>) -> Self {
        Self {
            dist,
            gold: gold.into(),
        }
    }

    fn gold_index(&self) -> Result<usize, MetricsError> {
        self.dist
            .label_index(&self.gold)
            .ok_or_else(|| MetricsError::LabelMismatch(self.gold.clone()))
    }

    fn confidence(&self) -> f64 {
        self.dist.max_value().clamp(0.0, 1.0)
    }

    fn is_correct(&self) -> Result<bool, MetricsError> {
        Ok(self.dist.argmax() == self.gold_index()?)
    }
}

/// Per-bin slice of a reliability diagram.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BinStats {
    pub bin_index: usize,
    pub lower: f64,
    pub upper: f64,
    pub count: usize,
    /// Fraction correct within the bin; 0.0 when the bin is empty.
    pub accuracy: f64,
    /// Mean confidence within the bin; 0.0 when the bin is empty.
    pub confidence: f64,
}

/// One point of a precision/recall curve at a decision threshold.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrPoint {
    pub threshold: f64,
    pub precision: f64,
    pub recall: f64,
}

/// One bin of a binary calibration curve: mean predicted probability of the
/// positive class against the observed positive fraction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveBin {
    pub bin_index: usize,
    pub lower: f64,
    pub upper: f64,
    pub count: usize,
    pub mean_predicted: f64,
    pub fraction_positive: f64,
}

/// Everything a calibration evaluation produces, serializable to JSON and CSV.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub n: usize,
    pub accuracy: f64,
    pub nll: f64,
    pub ece: f64,
    pub mce: f64,
    pub avg_confidence: f64,
    pub success_rate: f64,
    pub sum_mean: f64,
    pub sum_variance: f64,
    pub bins: Vec<BinStats>,
}

impl EvalReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }

    /// CSV with one `bin` row per reliability bin plus one final `summary`
    /// row. Bin rows fill the bin columns; the summary row fills the rest.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "kind,bin_index,lower,upper,count,bin_accuracy,bin_confidence,\
             n,accuracy,nll,ece,mce,avg_confidence,success_rate,sum_mean,sum_variance\n",
        );
        for b in &self.bins {
            out.push_str(&format!(
                "bin,{},{},{},{},{},{},,,,,,,,,\n",
                b.bin_index, b.lower, b.upper, b.count, b.accuracy, b.confidence
            ));
        }
        out.push_str(&format!(
            "summary,,,,,,,{},{},{},{},{},{},{},{},{}\n",
            self.n,
            self.accuracy,
            self.nll,
            self.ece,
            self.mce,
            self.avg_confidence,
            self.success_rate,
            self.sum_mean,
            self.sum_variance
        ));
        out
    }
}

fn require_nonempty<T>(items: &[T]) -> Result<(), MetricsError> {
    if items.is_empty() {
        Err(MetricsError::EmptyDataset)
    } else {
        Ok(())
    }
}

/// Fraction of records whose argmax matches the gold label.
pub fn accuracy(preds: &[Prediction]) -> Result<f64, MetricsError> {
    require_nonempty(preds)?;
    let mut correct = 0usize;
    for p in preds {
        if p.is_correct()? {
            correct += 1;
        }
    }
    Ok(correct as f64 / preds.len() as f64)
}

/// Mean negative log-likelihood of the gold label, clamped at [`NLL_CLAMP`].
pub fn nll(preds: &[Prediction]) -> Result<f64, MetricsError> {
    require_nonempty(preds)?;
    let mut total = 0.0;
    for p in preds {
        let prob = p.dist.values()[p.gold_index()?].max(NLL_CLAMP);
        total += -prob.ln();
    }
    Ok(total / preds.len() as f64)
}

/// Bin index under equal-width binning with `[lo, hi)` bins, last closed.
/// The multiply-floor shortcut is corrected against the exact edge values so
/// membership always agrees with direct comparisons.
fn bin_index(confidence: f64, m_bins: usize) -> usize {
    let edge = |i: usize| i as f64 / m_bins as f64;
    let mut idx = ((confidence * m_bins as f64) as usize).min(m_bins - 1);
    while idx > 0 && confidence < edge(idx) {
        idx -= 1;
    }
    while idx + 1 < m_bins && confidence >= edge(idx + 1) {
        idx += 1;
    }
    idx
}

fn reliability_bins(preds: &[Prediction], m_bins: usize) -> Result<Vec<BinStats>, MetricsError> {
    if m_bins == 0 {
        return Err(MetricsError::InvalidBinCount(0));
    }
    require_nonempty(preds)?;
    let mut counts = vec![0usize; m_bins];
    let mut correct = vec![0usize; m_bins];
    let mut conf_sum = vec![0.0f64; m_bins];
    for p in preds {
        let c = p.confidence();
        let idx = bin_index(c, m_bins);
        counts[idx] += 1;
        conf_sum[idx] += c;
        if p.is_correct()? {
            correct[idx] += 1;
        }
    }
    Ok((0..m_bins)
        .map(|i| BinStats {
            bin_index: i,
            lower: i as f64 / m_bins as f64,
            upper: (i + 1) as f64 / m_bins as f64,
            count: counts[i],
            accuracy: if counts[i] > 0 {
                correct[i] as f64 / counts[i] as f64
            } else {
                0.0
            },
            confidence: if counts[i] > 0 {
                conf_sum[i] / counts[i] as f64
            } else {
                0.0
            },
        })
        .collect())
}

/// Expected calibration error plus the bins it was computed from.
pub fn ece(preds: &[Prediction], m_bins: usize) -> Result<(f64, Vec<BinStats>), MetricsError> {
    let bins = reliability_bins(preds, m_bins)?;
    let n = preds.len() as f64;
    let mut total = 0.0;
    for b in &bins {
        if b.count > 0 {
            total += (b.count as f64 / n) * (b.accuracy - b.confidence).abs();
        }
    }
    Ok((total, bins))
}

/// Maximum calibration error: the worst |accuracy - confidence| gap over
/// non-empty bins.
pub fn mce(preds: &[Prediction], m_bins: usize) -> Result<f64, MetricsError> {
    let bins = reliability_bins(preds, m_bins)?;
    Ok(bins
        .iter()
        .filter(|b| b.count > 0)
        .map(|b| (b.accuracy - b.confidence).abs())
        .fold(0.0, f64::max))
}

/// Fraction of raw distribution sums within `tol` of 1.
pub fn success_rate(raw_sums: &[f64], tol: f64) -> Result<f64, MetricsError> {
    require_nonempty(raw_sums)?;
    let ok = raw_sums.iter().filter(|s| (**s - 1.0).abs() <= tol).count();
    Ok(ok as f64 / raw_sums.len() as f64)
}

/// Population mean and variance of the raw distribution sums.
pub fn sum_stats(raw_sums: &[f64]) -> Result<(f64, f64), MetricsError> {
    require_nonempty(raw_sums)?;
    let n = raw_sums.len() as f64;
    let mean = raw_sums.iter().sum::<f64>() / n;
    let var = raw_sums.iter().map(|s| (s - mean) * (s - mean)).sum::<f64>() / n;
    Ok((mean, var))
}

/// Precision/recall curve for one-vs-rest on `positive_label`, one point per
/// distinct score, thresholds descending. A record counts as predicted
/// positive at threshold t when its positive-class probability >= t.
///
/// Degenerate conventions: precision = 1 when nothing is predicted positive,
/// recall = 1 when there are no gold positives.
pub fn pr_curve(preds: &[Prediction], positive_label: &str) -> Result<Vec<PrPoint>, MetricsError> {
    require_nonempty(preds)?;
    let mut scored: Vec<(f64, bool)> = Vec::with_capacity(preds.len());
    for p in preds {
        let idx = p
            .dist
            .label_index(positive_label)
            .ok_or_else(|| MetricsError::UnknownLabel(positive_label.to_string()))?;
        p.gold_index()?; // gold must be a known label too
        scored.push((p.dist.values()[idx], p.gold == positive_label));
    }
    let total_pos = scored.iter().filter(|(_, pos)| *pos).count();
    scored.sort_by(|a, b| b.0.partial_cmp(&a.0).expect("finite scores"));

    let mut points = Vec::new();
    let mut tp = 0usize;
    let mut fp = 0usize;
    let mut i = 0;
    while i < scored.len() {
        let threshold = scored[i].0;
        while i < scored.len() && scored[i].0 == threshold {
            if scored[i].1 {
                tp += 1;
            } else {
                fp += 1;
            }
            i += 1;
        }
        let precision = if tp + fp > 0 {
            tp as f64 / (tp + fp) as f64
        } else {
            1.0
        };
        let recall = if total_pos > 0 {
            tp as f64 / total_pos as f64
        } else {
            1.0
        };
        points.push(PrPoint {
            threshold,
            precision,
            recall,
        });
    }
    Ok(points)
}

/// Binary calibration curve: bin records by predicted positive-class
/// probability; report mean prediction and observed positive fraction.
pub fn calibration_curve(
    preds: &[Prediction],
    positive_label: &str,
    m_bins: usize,
) -> Result<Vec<CurveBin>, MetricsError> {
    if m_bins == 0 {
        return Err(MetricsError::InvalidBinCount(0));
    }
    require_nonempty(preds)?;
    let mut counts = vec![0usize; m_bins];
    let mut positives = vec![0usize; m_bins];
    let mut pred_sum = vec![0.0f64; m_bins];
    for p in preds {
        let idx = p
            .dist
            .label_index(positive_label)
            .ok_or_else(|| MetricsError::UnknownLabel(positive_label.to_string()))?;
        p.gold_index()?;
        let score = p.dist.values()[idx].clamp(0.0, 1.0);
        let bin = bin_index(score, m_bins);
        counts[bin] += 1;
        pred_sum[bin] += score;
        if p.gold == positive_label {
            positives[bin] += 1;
        }
    }
    Ok((0..m_bins)
        .map(|i| CurveBin {
            bin_index: i,
            lower: i as f64 / m_bins as f64,
            upper: (i + 1) as f64 / m_bins as f64,
            count: counts[i],
            mean_predicted: if counts[i] > 0 {
                pred_sum[i] / counts[i] as f64
            } else {
                0.0
            },
            fraction_positive: if counts[i] > 0 {
                positives[i] as f64 / counts[i] as f64
            } else {
                0.0
            },
        })
        .collect())
}

/// Full evaluation over possibly-raw distributions. Raw sums feed the
/// sum-quality statistics; each distribution is then normalized (when it has
/// mass) before the calibration metrics run.
pub fn reliability_report(preds: &[Prediction], m_bins: usize) -> Result<EvalReport, MetricsError> {
    if m_bins == 0 {
        return Err(MetricsError::InvalidBinCount(0));
    }
    require_nonempty(preds)?;
    let raw_sums: Vec<f64> = preds.iter().map(|p| p.dist.sum()).collect();
    let normalized: Vec<Prediction> = preds
        .iter()
        .map(|p| {
            let dist = p.dist.normalized().unwrap_or_else(|_| p.dist.clone());
            Prediction::new(dist, p.gold.clone())
        })
        .collect();

    let (ece_value, bins) = ece(&normalized, m_bins)?;
    let mce_value = mce(&normalized, m_bins)?;
    let avg_confidence =
        normalized.iter().map(Prediction::confidence).sum::<f64>() / normalized.len() as f64;
    let (sum_mean, sum_variance) = sum_stats(&raw_sums)?;
    Ok(EvalReport {
        n: preds.len(),
        accuracy: accuracy(&normalized)?,
        nll: nll(&normalized)?,
        ece: ece_value,
        mce: mce_value,
        avg_confidence,
        success_rate: success_rate(&raw_sums, SUM_TOLERANCE)?,
        sum_mean,
        sum_variance,
        bins,
    })
}
