//! Post-hoc temperature fitting on a validation split.
//!
//! The search is a log-spaced grid over `[tau_min, tau_max]` with tau = 1
//! always included as a candidate, so the fit can never do worse on its own
//! objective than leaving the distributions alone. NLL objectives get a
//! golden-section refinement inside the winning grid bracket; ECE is
//! piecewise constant in tau, so refinement is pointless there and the grid
//! winner stands. Everything is sequential and seed-free: the same inputs
//! produce bit-identical fits.

use crate::calibrate::{calibrate_verbalized, temperature_scale, CRule};
use crate::metrics::{ece, MetricsError, Prediction};
use crate::prob::{CalibrationError, ProbVector, TemperatureParam};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FitError {
    #[error("no validation records to fit on")]
    EmptyDataset,
    #[error("invalid search range: need 0 < tau_min < tau_max and >= 2 grid points")]
    InvalidSearchRange,
    #[error(transparent)]
    Calibration(#[from] CalibrationError),
    #[error(transparent)]
    Metrics(#[from] MetricsError),
}

/// What the tuner minimizes on the validation split.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Objective {
    Nll,
    Ece,
}

/// How a distribution turns into logits before temperature scaling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CalibrationMode {
    /// Recover a logit proxy via ln(p + epsilon) + c. The intended path.
    InvertSoftmax,
    /// Feed normalized probabilities to softmax(p / tau) directly. The
    /// faulty baseline this toolkit exists to expose; fits land at tau < 1.
    ResoftmaxBaseline,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub tau_min: f64,
    pub tau_max: f64,
    pub grid_points: usize,
    /// Bin count used when the objective is ECE.
    pub ece_bins: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            tau_min: 0.05,
            tau_max: 10.0,
            grid_points: 400,
            ece_bins: 10,
        }
    }
}

/// A fitted temperature, persistable so a validation fit can be re-applied
/// to test data in a later run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TemperatureFit {
    pub tau_star: f64,
    pub objective: Objective,
    pub mode: CalibrationMode,
    pub c_rule: CRule,
    pub objective_value: f64,
    /// Every (tau, objective) pair evaluated, in evaluation order.
    pub search_trace: Vec<(f64, f64)>,
}

impl TemperatureFit {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("fit serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}

/// Calibrate one distribution under a mode. Both fitting and application go
/// through here so the fit's objective value matches later reports exactly.
pub fn apply_mode(
    p_raw: &ProbVector,
    tau: f64,
    mode: CalibrationMode,
    c_rule: CRule,
) -> Result<ProbVector, CalibrationError> {
    let tau = TemperatureParam::new(tau)?;
    match mode {
        CalibrationMode::InvertSoftmax => calibrate_verbalized(p_raw, tau, c_rule),
        CalibrationMode::ResoftmaxBaseline => {
            // softmax(p / tau) on the normalized values; at tau = 1 this is
            // exactly the re-softmax failure mode.
            let z = crate::prob::LogitVector::new(
                p_raw.labels().to_vec(),
                p_raw.normalized()?.values().to_vec(),
                0.0,
            )?;
            temperature_scale(&z, tau)
        }
    }
}

struct PreparedRecord {
    logits: Vec<f64>,
    gold_index: usize,
}

/// Hoist the tau-independent work (logit recovery, label lookup) out of the
/// search loop. The per-tau evaluation is then softmax(logits / tau).
fn prepare(
    val: &[Prediction],
    mode: CalibrationMode,
    c_rule: CRule,
) -> Result<Vec<PreparedRecord>, FitError> {
    let mut out = Vec::with_capacity(val.len());
    for p in val {
        let gold_index = p
            .dist
            .label_index(&p.gold)
            .ok_or_else(|| MetricsError::LabelMismatch(p.gold.clone()))?;
        let logits = match mode {
            CalibrationMode::InvertSoftmax => {
                crate::calibrate::invert_softmax(&p.dist, c_rule)?.values().to_vec()
            }
            CalibrationMode::ResoftmaxBaseline => p.dist.normalized()?.values().to_vec(),
        };
        out.push(PreparedRecord { logits, gold_index });
    }
    Ok(out)
}

fn eval_objective(
    records: &[PreparedRecord],
    tau: f64,
    objective: Objective,
    ece_bins: usize,
) -> Result<f64, FitError> {
    match objective {
        Objective::Nll => {
            let mut total = 0.0;
            for r in records {
                let mut max = f64::NEG_INFINITY;
                for z in &r.logits {
                    max = max.max(z / tau);
                }
                let mut sum = 0.0;
                for z in &r.logits {
                    sum += (z / tau - max).exp();
                }
                // -ln softmax(z/tau)[gold] = ln(sum exp) - z_gold/tau
                total += max + sum.ln() - r.logits[r.gold_index] / tau;
            }
            Ok(total / records.len() as f64)
        }
        Objective::Ece => {
            let preds: Vec<Prediction> = records
                .iter()
                .map(|r| {
                    let labels: Vec<String> =
                        (0..r.logits.len()).map(|i| format!("c{i}")).collect();
                    let gold = labels[r.gold_index].clone();
                    let z = crate::prob::LogitVector::new(labels, r.logits.clone(), 0.0)
                        .expect("prepared records are well-formed");
                    let dist = temperature_scale(&z, TemperatureParam::new(tau).expect("tau > 0"))
                        .expect("finite logits");
                    Prediction::new(dist, gold)
                })
                .collect();
            Ok(ece(&preds, ece_bins)?.0)
        }
    }
}

/// Grid search (log-spaced, tau = 1 included) minimizing the objective on
/// the validation records. Exact ties break toward the tau closest to 1,
/// then toward the smaller tau. NLL winners are refined by golden-section
/// search within the neighboring grid bracket.
pub fn fit_temperature(
    val: &[Prediction],
    objective: Objective,
    mode: CalibrationMode,
    c_rule: CRule,
    search: &SearchConfig,
) -> Result<TemperatureFit, FitError> {
    if val.is_empty() {
        return Err(FitError::EmptyDataset);
    }
    if !search.tau_min.is_finite()
        || !search.tau_max.is_finite()
        || search.tau_min <= 0.0
        || search.tau_max <= search.tau_min
        || search.grid_points < 2
    {
        return Err(FitError::InvalidSearchRange);
    }

    let records = prepare(val, mode, c_rule)?;

    let mut grid: Vec<f64> = Vec::with_capacity(search.grid_points + 1);
    let (ln_min, ln_max) = (search.tau_min.ln(), search.tau_max.ln());
    for i in 0..search.grid_points {
        let t = i as f64 / (search.grid_points - 1) as f64;
        grid.push((ln_min + t * (ln_max - ln_min)).exp());
    }
    if search.tau_min <= 1.0 && 1.0 <= search.tau_max && !grid.contains(&1.0) {
        let pos = grid.partition_point(|&t| t < 1.0);
        grid.insert(pos, 1.0);
    }

    let mut trace: Vec<(f64, f64)> = Vec::with_capacity(grid.len());
    let mut best_idx = 0usize;
    for (i, &tau) in grid.iter().enumerate() {
        let value = eval_objective(&records, tau, objective, search.ece_bins)?;
        trace.push((tau, value));
        let (best_tau, best_value) = trace[best_idx];
        let better = value < best_value
            || (value == best_value
                && ((tau - 1.0).abs() < (best_tau - 1.0).abs()
                    || ((tau - 1.0).abs() == (best_tau - 1.0).abs() && tau < best_tau)));
        if better {
            best_idx = i;
        }
    }
    let (mut tau_star, mut best_value) = trace[best_idx];

    if objective == Objective::Nll {
        // Golden-section refinement between the winner's grid neighbors.
        let mut lo = if best_idx > 0 { grid[best_idx - 1] } else { grid[0] };
        let mut hi = grid.get(best_idx + 1).copied().unwrap_or(*grid.last().unwrap());
        const INV_PHI: f64 = 0.618_033_988_749_894_8;
        let mut x1 = hi - INV_PHI * (hi - lo);
        let mut x2 = lo + INV_PHI * (hi - lo);
        let mut f1 = eval_objective(&records, x1, objective, search.ece_bins)?;
        let mut f2 = eval_objective(&records, x2, objective, search.ece_bins)?;
        trace.push((x1, f1));
        trace.push((x2, f2));
        for _ in 0..100 {
            if hi - lo < 1e-12 * tau_star.max(1.0) {
                break;
            }
            if f1 < f2 {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - INV_PHI * (hi - lo);
                f1 = eval_objective(&records, x1, objective, search.ece_bins)?;
                trace.push((x1, f1));
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + INV_PHI * (hi - lo);
                f2 = eval_objective(&records, x2, objective, search.ece_bins)?;
                trace.push((x2, f2));
            }
        }
        for &(tau, value) in &trace {
            if value < best_value {
                tau_star = tau;
                best_value = value;
            }
        }
    }

    Ok(TemperatureFit {
        tau_star,
        objective,
        mode,
        c_rule,
        objective_value: best_value,
        search_trace: trace,
    })
}

/// Apply a persisted fit to distributions. Output order matches input.
pub fn apply_fit(
    dists: &[ProbVector],
    fit: &TemperatureFit,
) -> Result<Vec<ProbVector>, CalibrationError> {
    dists
        .iter()
        .map(|p| apply_mode(p, fit.tau_star, fit.mode, fit.c_rule))
        .collect()
}
