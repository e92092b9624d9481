//! Producing verbalized distributions: embedded prompt templates, a
//! deterministic mock model for desk-scale experiments, and a minimal
//! chat-endpoint client with parse-aware retries.

pub mod client;
pub mod mock;
pub mod templates;
