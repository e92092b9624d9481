//! Labeled probability and logit vectors.
//!
//! `ProbVector` carries a verbalized distribution in its *raw* form: values
//! are non-negative but the sum is whatever the model emitted. Nothing here
//! renormalizes implicitly; callers opt in via [`ProbVector::normalized`].

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CalibrationError {
    #[error("distribution needs at least 2 classes, got {0}")]
    EmptyDistribution(usize),
    #[error("labels and values have different lengths ({labels} vs {values})")]
    LengthMismatch { labels: usize, values: usize },
    #[error("probability values must be finite and non-negative")]
    InvalidValue,
    #[error("non-finite logit value")]
    NonFiniteInput,
    #[error("all probability mass is zero")]
    AllZero,
    #[error("temperature must be finite and > 0, got {0}")]
    InvalidTemperature(f64),
}

/// A distribution over named classes. May be raw (sum != 1) or normalized.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbVector {
    labels: Vec<String>,
    values: Vec<f64>,
}

impl ProbVector {
    /// Values must be finite and non-negative; at least 2 classes.
    pub fn new(labels: Vec<String>, values: Vec<f64>) -> Result<Self, CalibrationError> {
        if labels.len() != values.len() {
            return Err(CalibrationError::LengthMismatch {
                labels: labels.len(),
                values: values.len(),
            });
        }
        if labels.len() < 2 {
            return Err(CalibrationError::EmptyDistribution(labels.len()));
        }
        if values.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(CalibrationError::InvalidValue);
        }
        Ok(Self { labels, values })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    /// True when the raw sum is within `tol` of 1.
    pub fn is_normalized(&self, tol: f64) -> bool {
        (self.sum() - 1.0).abs() <= tol
    }

    /// Rescale so values sum to 1. Errors when there is no mass to scale.
    pub fn normalized(&self) -> Result<Self, CalibrationError> {
        let s = self.sum();
        if s <= 0.0 {
            return Err(CalibrationError::AllZero);
        }
        Ok(Self {
            labels: self.labels.clone(),
            values: self.values.iter().map(|v| v / s).collect(),
        })
    }

    /// Index of the largest value; ties go to the lowest index.
    pub fn argmax(&self) -> usize {
        let mut best = 0;
        for i in 1..self.values.len() {
            if self.values[i] > self.values[best] {
                best = i;
            }
        }
        best
    }

    /// Largest value (the confidence of the prediction).
    pub fn max_value(&self) -> f64 {
        self.values[self.argmax()]
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn get(&self, label: &str) -> Option<f64> {
        self.label_index(label).map(|i| self.values[i])
    }

    /// Shannon entropy in nats, with 0 ln 0 = 0. Meaningful on normalized input.
    pub fn entropy(&self) -> f64 {
        self.values
            .iter()
            .map(|&p| if p > 0.0 { -p * p.ln() } else { 0.0 })
            .sum()
    }
}

/// Logits recovered from (or feeding into) a softmax, plus the additive
/// offset chosen during recovery. The offset never changes the softmax.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogitVector {
    labels: Vec<String>,
    values: Vec<f64>,
    offset_c: f64,
}

impl LogitVector {
    pub fn new(
        labels: Vec<String>,
        values: Vec<f64>,
        offset_c: f64,
    ) -> Result<Self, CalibrationError> {
        if labels.len() != values.len() {
            return Err(CalibrationError::LengthMismatch {
                labels: labels.len(),
                values: values.len(),
            });
        }
        if labels.len() < 2 {
            return Err(CalibrationError::EmptyDistribution(labels.len()));
        }
        Ok(Self {
            labels,
            values,
            offset_c,
        })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn offset_c(&self) -> f64 {
        self.offset_c
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Softmax temperature. Finite, strictly positive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TemperatureParam(f64);

impl TemperatureParam {
    pub fn new(tau: f64) -> Result<Self, CalibrationError> {
        if !tau.is_finite() || tau <= 0.0 {
            return Err(CalibrationError::InvalidTemperature(tau));
        }
        Ok(Self(tau))
    }

    #[must_use]
    pub fn value(self) -> f64 {
        self.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pv(values: &[f64]) -> ProbVector {
        let labels = (0..values.len()).map(|i| format!("l{i}")).collect();
        ProbVector::new(labels, values.to_vec()).unwrap()
    }

    #[test]
    fn rejects_single_class() {
        let err = ProbVector::new(vec!["a".into()], vec![1.0]).unwrap_err();
        assert_eq!(err, CalibrationError::EmptyDistribution(1));
    }

    #[test]
    fn rejects_length_mismatch() {
        let err = ProbVector::new(vec!["a".into(), "b".into()], vec![1.0]).unwrap_err();
        assert!(matches!(err, CalibrationError::LengthMismatch { .. }));
    }

    #[test]
    fn rejects_negative_and_non_finite() {
        assert!(ProbVector::new(vec!["a".into(), "b".into()], vec![-0.1, 1.1]).is_err());
        assert!(ProbVector::new(vec!["a".into(), "b".into()], vec![f64::NAN, 0.5]).is_err());
    }

    #[test]
    fn raw_sum_preserved() {
        let p = pv(&[0.8, 0.4]);
        assert_eq!(p.sum(), 1.2000000000000002);
        assert!(!p.is_normalized(1e-6));
    }

    #[test]
    fn normalize_rescales() {
        let p = pv(&[0.8, 0.4]).normalized().unwrap();
        assert!((p.sum() - 1.0).abs() < 1e-12);
        assert!((p.values()[0] - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn normalize_zero_mass_fails() {
        assert_eq!(
            pv(&[0.0, 0.0]).normalized().unwrap_err(),
            CalibrationError::AllZero
        );
    }

    #[test]
    fn argmax_tie_takes_lowest_index() {
        assert_eq!(pv(&[0.5, 0.5]).argmax(), 0);
        assert_eq!(pv(&[0.1, 0.5, 0.5]).argmax(), 1);
    }

    #[test]
    fn entropy_of_uniform_is_ln_k() {
        let p = pv(&[0.25, 0.25, 0.25, 0.25]);
        assert!((p.entropy() - 4.0_f64.ln()).abs() < 1e-12);
        assert_eq!(pv(&[1.0, 0.0]).entropy(), 0.0);
    }

    #[test]
    fn temperature_param_bounds() {
        assert!(TemperatureParam::new(0.0).is_err());
        assert!(TemperatureParam::new(-1.0).is_err());
        assert!(TemperatureParam::new(f64::INFINITY).is_err());
        assert_eq!(TemperatureParam::new(2.0).unwrap().value(), 2.0);
    }
}
