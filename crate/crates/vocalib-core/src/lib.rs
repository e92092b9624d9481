//! Calibration toolkit for verbalized probability distributions.
//!
//! Black-box language models can be prompted to answer classification
//! queries with an explicit probability distribution over the label set.
//! Those verbalized probabilities are usually overconfident, and because
//! the model only exposes text, the usual fix (temperature scaling of the
//! logits) has no logits to work with. Re-softmaxing the probabilities as
//! if they were logits is not a fix: softmax squashes a distribution into
//! `[1/(K-1+e), e/(K-1+e)]`, destroying most of the signal and dragging
//! the fitted temperature below 1.
//!
//! This crate implements the working alternative: recover logit proxies
//! with a log transform (`invert_softmax`), fit a single temperature on a
//! validation split (`fit_temperature`), and rescale (`temperature_scale`).
//! The additive constant in the log transform cancels inside softmax, so
//! any choice gives identical calibrated probabilities. Around that core
//! sit a lenient parser for map-literal replies, record ingest/egress with
//! cross-model intersection, calibration metrics (accuracy, NLL, ECE, MCE,
//! reliability bins, PR curves), and elicitation against either a real
//! chat endpoint or a deterministic mock model that reproduces the
//! pathologies synthetically.
//!
//! ```
//! use vocalib_core::{
//!     fit_temperature, mock_generate, raw_predictions, CalibrationMode, CRule,
//!     MockLlmConfig, Objective, SearchConfig, Split,
//! };
//!
//! let cfg = MockLlmConfig {
//!     n_classes: 4,
//!     sharpness_beta: 2.5, // overconfident verbalizer
//!     seed: 7,
//!     ..MockLlmConfig::default()
//! };
//! let records = mock_generate(&cfg, 600).unwrap();
//! let val = raw_predictions(&records, Split::Validation);
//! let fit = fit_temperature(
//!     &val,
//!     Objective::Nll,
//!     CalibrationMode::InvertSoftmax,
//!     CRule::MeanRule,
//!     &SearchConfig::default(),
//! )
//! .unwrap();
//! assert!(fit.tau_star > 1.0);
//! ```

pub mod calibrate;
pub mod dataset;
pub mod elicit;
pub mod metrics;
pub mod parser;
pub mod prob;
pub mod tuner;

pub use calibrate::{
    calibrate_verbalized, invert_softmax, resoftmax, softmax, temperature_scale, CRule, EPSILON,
};
pub use dataset::{
    calibrated_predictions, filter_parsed, intersect_by_text, load_records, raw_predictions,
    save_records, DatasetError, DropCounts, PredictionRecord, Split, TaskSpec, MASSIVE_LABELS,
};
pub use elicit::client::{
    elicit, elicit_batch, ChatEndpoint, ChatMessage, ChatRequest, ElicitError, EndpointConfig,
    GenConfig, HttpChatClient, RetryPolicy, TransportError,
};
pub use elicit::mock::{mock_generate, MockError, MockLlmConfig};
pub use elicit::templates::{MessageLayout, PromptTemplate, RenderedPrompt, TemplateError};
pub use metrics::{
    accuracy, calibration_curve, ece, mce, nll, pr_curve, reliability_report, success_rate,
    sum_stats, BinStats, CurveBin, EvalReport, MetricsError, PrPoint, Prediction, NLL_CLAMP,
    SUM_TOLERANCE,
};
pub use parser::{canonicalize_label, parse_response, ParseOutcome, ParseStatus, RawResponse};
pub use prob::{CalibrationError, LogitVector, ProbVector, TemperatureParam};
pub use tuner::{
    apply_fit, apply_mode, fit_temperature, CalibrationMode, FitError, Objective, SearchConfig,
    TemperatureFit,
};
