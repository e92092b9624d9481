//! Deterministic fixture builders shared by the benchmarks.

use vocalib_core::{mock_generate, raw_predictions, MockLlmConfig, Prediction, ProbVector, Split};

/// A K-way distribution with spread but non-degenerate components.
pub fn spread_dist(k: usize) -> ProbVector {
    let labels = (0..k).map(|i| format!("label_{i}")).collect();
    let values: Vec<f64> = (0..k).map(|i| 1.0 + ((i * 37) % 97) as f64).collect();
    let total: f64 = values.iter().sum();
    ProbVector::new(labels, values.iter().map(|v| v / total).collect())
        .expect("fixture distribution is valid")
}

/// Metric-ready predictions from a seeded overconfident mock run.
pub fn mock_predictions(n: usize, k: usize, seed: u64) -> Vec<Prediction> {
    let cfg = MockLlmConfig {
        n_classes: k,
        sharpness_beta: 2.0,
        latent_accuracy: 1.0 / k as f64 + 0.5 * (1.0 - 1.0 / k as f64),
        seed,
        ..MockLlmConfig::default()
    };
    let records = mock_generate(&cfg, n).expect("mock generation succeeds");
    let mut preds = raw_predictions(&records, Split::Validation);
    preds.extend(raw_predictions(&records, Split::Test));
    preds
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_well_formed() {
        let d = spread_dist(60);
        assert_eq!(d.len(), 60);
        assert!(d.is_normalized(1e-9));
        let preds = mock_predictions(200, 4, 1);
        assert_eq!(preds.len(), 200);
    }
}
