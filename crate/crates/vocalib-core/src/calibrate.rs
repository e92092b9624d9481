//! Softmax inversion and temperature scaling for verbalized distributions.
//!
//! A model that verbalizes probabilities gives us `p`, not logits. To apply
//! temperature scaling we recover a logit proxy first:
//!
//! ```text
//! z_i = ln(p_i + EPSILON) + c          (any constant c; softmax ignores it)
//! p_hat = softmax(z / tau)
//! ```
//!
//! Applying softmax *directly* to `p` ("re-softmax") is a distinct, lossy
//! operation: it crushes every K-class distribution into
//! `[1/(K-1+e), e/(K-1+e)]` per component, so downstream temperature fits
//! compensate with tau < 1. [`resoftmax`] exists to reproduce and measure
//! that failure mode, not to calibrate anything.

use crate::prob::{CalibrationError, LogitVector, ProbVector, TemperatureParam};
use serde::{Deserialize, Serialize};

/// Additive guard inside `ln(p + EPSILON)` so zero probabilities stay finite.
pub const EPSILON: f64 = 1e-9;

/// Choice of the free additive constant used during logit recovery.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub enum CRule {
    /// c = -mean(ln(p + EPSILON)); recovered logits average to zero.
    #[default]
    MeanRule,
    /// A caller-supplied constant.
    Fixed(f64),
}

/// Numerically stable softmax. Input must be finite.
pub fn softmax(z: &LogitVector) -> Result<ProbVector, CalibrationError> {
    let values = z.values();
    if values.iter().any(|v| !v.is_finite()) {
        return Err(CalibrationError::NonFiniteInput);
    }
    let max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let exps: Vec<f64> = values.iter().map(|v| (v - max).exp()).collect();
    let sum: f64 = exps.iter().sum();
    ProbVector::new(z.labels().to_vec(), exps.iter().map(|e| e / sum).collect())
}

/// Recover a logit proxy from a (possibly raw) distribution.
///
/// Output keeps the input's labels and order. With [`CRule::MeanRule`] the
/// recovered logits have mean exactly zero up to rounding.
pub fn invert_softmax(p: &ProbVector, c_rule: CRule) -> Result<LogitVector, CalibrationError> {
    if p.values().iter().all(|&v| v == 0.0) {
        return Err(CalibrationError::AllZero);
    }
    let logp: Vec<f64> = p.values().iter().map(|&v| (v + EPSILON).ln()).collect();
    let c = match c_rule {
        CRule::MeanRule => -logp.iter().sum::<f64>() / logp.len() as f64,
        CRule::Fixed(c) => c,
    };
    let z = logp.iter().map(|lp| lp + c).collect();
    LogitVector::new(p.labels().to_vec(), z, c)
}

/// Softmax of the probability values themselves, i.e. what happens when a
/// pipeline mistakes probabilities for logits. Expects normalized input.
pub fn resoftmax(p: &ProbVector) -> Result<ProbVector, CalibrationError> {
    let z = LogitVector::new(p.labels().to_vec(), p.values().to_vec(), 0.0)?;
    softmax(&z)
}

/// softmax(z / tau). tau > 1 flattens, tau < 1 sharpens, tau = 1 is identity.
pub fn temperature_scale(
    z: &LogitVector,
    tau: TemperatureParam,
) -> Result<ProbVector, CalibrationError> {
    let scaled: Vec<f64> = z.values().iter().map(|v| v / tau.value()).collect();
    let zt = LogitVector::new(z.labels().to_vec(), scaled, z.offset_c())?;
    softmax(&zt)
}

/// Full pipeline for one verbalized distribution: recover logits, then
/// temperature-scale. Non-unit input sums come out renormalized because the
/// softmax absorbs them.
pub fn calibrate_verbalized(
    p_raw: &ProbVector,
    tau: TemperatureParam,
    c_rule: CRule,
) -> Result<ProbVector, CalibrationError> {
    temperature_scale(&invert_softmax(p_raw, c_rule)?, tau)
}
