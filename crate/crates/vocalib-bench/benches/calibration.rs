//! Benchmarks for the hot paths: logit recovery and scaling at K = 60,
//! binned metrics over ten thousand records, a full temperature fit, and
//! reply parsing.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use vocalib_bench::{mock_predictions, spread_dist};
use vocalib_core::{
    calibrate_verbalized, ece, fit_temperature, invert_softmax, parse_response, softmax,
    CRule, CalibrationMode, Objective, SearchConfig, TemperatureParam,
};

fn bench_calibrate(c: &mut Criterion) {
    let dist = spread_dist(60);
    let logits = invert_softmax(&dist, CRule::MeanRule).unwrap();
    let tau = TemperatureParam::new(1.73).unwrap();

    c.bench_function("invert_softmax_k60", |b| {
        b.iter(|| invert_softmax(black_box(&dist), CRule::MeanRule).unwrap())
    });
    c.bench_function("softmax_k60", |b| {
        b.iter(|| softmax(black_box(&logits)).unwrap())
    });
    c.bench_function("calibrate_verbalized_k60", |b| {
        b.iter(|| calibrate_verbalized(black_box(&dist), tau, CRule::MeanRule).unwrap())
    });
}

fn bench_metrics(c: &mut Criterion) {
    let preds = mock_predictions(10_000, 4, 42);
    c.bench_function("ece_10k_records_15_bins", |b| {
        b.iter(|| ece(black_box(&preds), 15).unwrap())
    });
}

fn bench_fit(c: &mut Criterion) {
    let preds = mock_predictions(300, 4, 7);
    let search = SearchConfig::default();
    c.bench_function("fit_temperature_300_records", |b| {
        b.iter(|| {
            fit_temperature(
                black_box(&preds),
                Objective::Nll,
                CalibrationMode::InvertSoftmax,
                CRule::MeanRule,
                &search,
            )
            .unwrap()
        })
    });
}

fn bench_parse(c: &mut Criterion) {
    let labels: Vec<String> = ["sadness", "joy", "love", "anger", "fear", "surprise"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let reply = "Sure, here is my estimate: {'sadness': 0.62, 'joy': 0.05, \
                 'love': 0.02, 'anger': 0.19, 'fear': 0.10, 'surprise': 0.02}";
    c.bench_function("parse_response_prose_wrapped", |b| {
        b.iter(|| parse_response(black_box(reply), black_box(&labels)))
    });
}

criterion_group!(benches, bench_calibrate, bench_metrics, bench_fit, bench_parse);
criterion_main!(benches);
