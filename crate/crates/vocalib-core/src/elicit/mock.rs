//! A deterministic synthetic "verbalizing model".
//!
//! Each record draws latent logits from a label-conditioned Gaussian score
//! model (the gold label's logit gets a mean shift tuned by bisection so
//! argmax accuracy lands on `latent_accuracy`), sharpens them by
//! `sharpness_beta`, softmaxes, rounds to `decimals` places, and prints
//! the result as a Python-dict reply. Rounding is not re-normalized, so
//! the verbalized sum drifts off 1.0 exactly the way real replies do.
//! With `sharpness_beta > 1` the set is overconfident: mean confidence
//! exceeds accuracy, and a fitted temperature comes out above 1.

use crate::dataset::{PredictionRecord, Split};
use crate::parser::{parse_response, RawResponse};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MockError {
    #[error("invalid mock config: {0}")]
    InvalidConfig(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MockLlmConfig {
    pub n_classes: usize,
    /// Multiplier on the latent logits; above 1 produces overconfidence.
    pub sharpness_beta: f64,
    /// Verbalized rounding precision, 1 or 2 decimal places.
    pub decimals: u8,
    /// Probability of emitting a prose-only reply instead of a map.
    pub malformed_rate: f64,
    /// Gaussian noise added to the top component before rounding, pushing
    /// the verbalized sum away from 1.
    pub sum_noise_sigma: f64,
    /// Target argmax accuracy of the latent score model, in (1/K, 1].
    pub latent_accuracy: f64,
    pub seed: u64,
    /// Label names; defaults to label_0..label_{K-1}.
    pub labels: Option<Vec<String>>,
}

impl Default for MockLlmConfig {
    fn default() -> Self {
        Self {
            n_classes: 2,
            sharpness_beta: 1.0,
            decimals: 2,
            malformed_rate: 0.0,
            sum_noise_sigma: 0.0,
            latent_accuracy: 0.8,
            seed: 0,
            labels: None,
        }
    }
}

impl MockLlmConfig {
    fn validate(&self) -> Result<(), MockError> {
        let fail = |msg: String| Err(MockError::InvalidConfig(msg));
        if self.n_classes < 2 {
            return fail(format!("n_classes must be >= 2, got {}", self.n_classes));
        }
        if !(self.sharpness_beta.is_finite() && self.sharpness_beta > 0.0) {
            return fail(format!("sharpness_beta must be positive, got {}", self.sharpness_beta));
        }
        if !(self.decimals == 1 || self.decimals == 2) {
            return fail(format!("decimals must be 1 or 2, got {}", self.decimals));
        }
        if !(0.0..=1.0).contains(&self.malformed_rate) {
            return fail(format!("malformed_rate must be in [0,1], got {}", self.malformed_rate));
        }
        if !(self.sum_noise_sigma.is_finite() && self.sum_noise_sigma >= 0.0) {
            return fail(format!("sum_noise_sigma must be >= 0, got {}", self.sum_noise_sigma));
        }
        let chance = 1.0 / self.n_classes as f64;
        if !(self.latent_accuracy > chance && self.latent_accuracy <= 1.0) {
            return fail(format!(
                "latent_accuracy must be in (1/{}, 1], got {}",
                self.n_classes, self.latent_accuracy
            ));
        }
        if let Some(labels) = &self.labels {
            if labels.len() != self.n_classes {
                return fail(format!(
                    "{} labels provided for {} classes",
                    labels.len(),
                    self.n_classes
                ));
            }
        }
        Ok(())
    }
}

fn normal_pdf(x: f64) -> f64 {
    (-0.5 * x * x).exp() / (2.0 * std::f64::consts::PI).sqrt()
}

fn normal_cdf(x: f64) -> f64 {
    0.5 * (1.0 + libm::erf(x / std::f64::consts::SQRT_2))
}

/// P(the shifted logit wins) = integral of phi(t - mu) * Phi(t)^(K-1) dt.
fn win_probability(k: usize, mu: f64) -> f64 {
    let (a, b) = (mu - 8.0, mu + 8.0);
    let n = 400;
    let h = (b - a) / n as f64;
    let f = |t: f64| normal_pdf(t - mu) * normal_cdf(t).powi(k as i32 - 1);
    let mut acc = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + i as f64 * h);
    }
    acc * h / 3.0
}

/// Mean shift for the gold logit that hits the target accuracy, found by
/// bisection; win_probability is monotone in mu.
fn latent_mean(k: usize, accuracy: f64) -> f64 {
    if accuracy >= 1.0 - 1e-12 {
        return 40.0;
    }
    let (mut lo, mut hi) = (0.0f64, 40.0f64);
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if win_probability(k, mid) < accuracy {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn softmax_values(z: &[f64]) -> Vec<f64> {
    let m = z.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let exps: Vec<f64> = z.iter().map(|v| (v - m).exp()).collect();
    let total: f64 = exps.iter().sum();
    exps.into_iter().map(|e| e / total).collect()
}

/// Generate `n_records` synthetic prediction records, bit-deterministic in
/// the config. Records alternate Validation/Test by index. Every reply is
/// routed through the real parser, so non-malformed records carry parsed
/// distributions exactly equal to the printed values.
pub fn mock_generate(
    cfg: &MockLlmConfig,
    n_records: usize,
) -> Result<Vec<PredictionRecord>, MockError> {
    cfg.validate()?;
    if n_records == 0 {
        return Err(MockError::InvalidConfig("n_records must be >= 1".to_string()));
    }
    let k = cfg.n_classes;
    let labels: Vec<String> = match &cfg.labels {
        Some(ls) => ls.clone(),
        None => (0..k).map(|i| format!("label_{i}")).collect(),
    };
    let mu = latent_mean(k, cfg.latent_accuracy);
    let d = cfg.decimals as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut records = Vec::with_capacity(n_records);
    for i in 0..n_records {
        // fixed draw order per record keeps the stream reproducible
        let gold = rng.random_range(0..k);
        let mut z: Vec<f64> = (0..k).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
        z[gold] += mu;
        let scaled: Vec<f64> = z.iter().map(|v| v * cfg.sharpness_beta).collect();
        let mut probs = softmax_values(&scaled);
        if cfg.sum_noise_sigma > 0.0 {
            let delta = rng.sample::<f64, _>(StandardNormal) * cfg.sum_noise_sigma;
            let top = probs
                .iter()
                .enumerate()
                .max_by(|a, b| a.1.total_cmp(b.1))
                .map(|(idx, _)| idx)
                .expect("k >= 2");
            probs[top] = (probs[top] + delta).max(0.0);
        }
        let coin: f64 = rng.random();
        let response_text = if coin < cfg.malformed_rate {
            format!(
                "I would call this one {}, though it is hard to be sure.",
                labels[gold]
            )
        } else {
            let body = labels
                .iter()
                .zip(&probs)
                .map(|(l, p)| format!("'{l}': {p:.d$}"))
                .collect::<Vec<_>>()
                .join(", ");
            format!("{{{body}}}")
        };
        let parse = parse_response(&response_text, &labels);
        records.push(PredictionRecord {
            text: format!("synthetic example {i:05}"),
            gold_label: labels[gold].clone(),
            raw_response: Some(RawResponse {
                text: response_text,
                model_id: format!("mock-llm-{}", cfg.seed),
                token_temperature: 0.0,
            }),
            parse,
            split: if i % 2 == 0 { Split::Validation } else { Split::Test },
            calibrated: None,
        });
    }
    Ok(records)
}
