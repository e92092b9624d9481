//! Prediction records: JSONL ingest and egress, parse-status filtering,
//! and cross-model intersection by input text.
//!
//! A record file is line-delimited JSON. Loading re-parses each stored
//! reply, so the parse outcome on a loaded record always reflects the
//! current parser rather than whatever produced the file.

use crate::metrics::Prediction;
use crate::parser::{canonicalize_label, parse_response, ParseOutcome, ParseStatus, RawResponse};
use crate::prob::ProbVector;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashSet};
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DatasetError {
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("line {0}: {1}")]
    Schema(usize, String),
    #[error("line {line_no}: gold label {label:?} is not in task {task:?}")]
    UnknownGoldLabel {
        line_no: usize,
        label: String,
        task: String,
    },
    #[error("a task needs at least 2 unique labels, got {0}")]
    TooFewLabels(usize),
    #[error("positive label {0:?} is not in the label set")]
    UnknownPositiveLabel(String),
    #[error("record text must be non-empty (line {0})")]
    EmptyText(usize),
    #[error("cross-model intersection needs at least 2 models, got {0}")]
    TooFewModels(usize),
    #[error("cross-model intersection is empty")]
    EmptyIntersection,
}

/// Which half of the dataset a record belongs to. Temperature is always
/// fitted on `Validation` and evaluated on `Test`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Split {
    Validation,
    Test,
}

/// A classification task: a name, an ordered label set, and optionally a
/// positive label for one-vs-rest PR curves.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaskSpec {
    pub name: String,
    pub labels: Vec<String>,
    pub positive_label: Option<String>,
}

impl TaskSpec {
    /// Labels are canonicalized up front so every later comparison is
    /// exact string equality.
    pub fn new(
        name: impl Into<String>,
        labels: Vec<String>,
        positive_label: Option<String>,
    ) -> Result<Self, DatasetError> {
        let labels: Vec<String> = labels.iter().map(|l| canonicalize_label(l)).collect();
        let unique: HashSet<&String> = labels.iter().collect();
        if unique.len() < 2 || unique.len() != labels.len() {
            return Err(DatasetError::TooFewLabels(unique.len()));
        }
        let positive_label = match positive_label {
            Some(p) => {
                let p = canonicalize_label(&p);
                if !labels.contains(&p) {
                    return Err(DatasetError::UnknownPositiveLabel(p));
                }
                Some(p)
            }
            None => None,
        };
        Ok(Self {
            name: name.into(),
            labels,
            positive_label,
        })
    }

    pub fn imdb() -> Self {
        Self::new(
            "imdb",
            vec!["positive".into(), "negative".into()],
            Some("positive".into()),
        )
        .expect("static label set")
    }

    pub fn emotion() -> Self {
        let labels = ["sadness", "joy", "love", "anger", "fear", "surprise"];
        Self::new("emotion", labels.iter().map(|s| s.to_string()).collect(), None)
            .expect("static label set")
    }

    /// The 60 intent labels, in the order the prompts list them.
    pub fn massive() -> Self {
        Self::new(
            "massive",
            MASSIVE_LABELS.iter().map(|s| s.to_string()).collect(),
            None,
        )
        .expect("static label set")
    }

    pub fn builtin(name: &str) -> Option<Self> {
        match name {
            "imdb" => Some(Self::imdb()),
            "emotion" => Some(Self::emotion()),
            "massive" => Some(Self::massive()),
            _ => None,
        }
    }

    pub fn n_classes(&self) -> usize {
        self.labels.len()
    }
}

pub const MASSIVE_LABELS: [&str; 60] = [
    "datetime_query",
    "iot_hue_lightchange",
    "transport_ticket",
    "takeaway_query",
    "qa_stock",
    "general_greet",
    "recommendation_events",
    "music_dislikeness",
    "iot_wemo_off",
    "cooking_recipe",
    "qa_currency",
    "transport_traffic",
    "general_quirky",
    "weather_query",
    "audio_volume_up",
    "email_addcontact",
    "takeaway_order",
    "email_querycontact",
    "iot_hue_lightup",
    "recommendation_locations",
    "play_audiobook",
    "lists_createoradd",
    "news_query",
    "alarm_query",
    "iot_wemo_on",
    "general_joke",
    "qa_definition",
    "social_query",
    "music_settings",
    "audio_volume_other",
    "calendar_remove",
    "iot_hue_lightdim",
    "calendar_query",
    "email_sendemail",
    "iot_cleaning",
    "audio_volume_down",
    "play_radio",
    "cooking_query",
    "datetime_convert",
    "qa_maths",
    "iot_hue_lightoff",
    "iot_hue_lighton",
    "transport_query",
    "music_likeness",
    "email_query",
    "play_music",
    "audio_volume_mute",
    "social_post",
    "alarm_set",
    "qa_factoid",
    "calendar_set",
    "play_game",
    "alarm_remove",
    "lists_remove",
    "transport_taxi",
    "recommendation_movies",
    "iot_coffee",
    "music_query",
    "play_podcasts",
    "lists_query",
];

/// One elicited example: the input text, its gold label, the raw model
/// reply, and what the parser made of it. `calibrated` is filled in by
/// the calibration pass and never overwrites the raw parse.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PredictionRecord {
    pub text: String,
    pub gold_label: String,
    pub raw_response: Option<RawResponse>,
    pub parse: ParseOutcome,
    pub split: Split,
    pub calibrated: Option<ProbVector>,
}

/// On-disk JSONL shape. Distributions are stored keyed by label; order is
/// recovered from the task at load time.
#[derive(Debug, Serialize, Deserialize)]
struct RecordLine {
    text: String,
    gold_label: String,
    response_text: String,
    model_id: String,
    token_temperature: f64,
    split: Split,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    status: Option<ParseStatus>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    parsed_distribution: Option<BTreeMap<String, f64>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    calibrated_distribution: Option<BTreeMap<String, f64>>,
}

fn dist_to_map(dist: &ProbVector) -> BTreeMap<String, f64> {
    dist.labels()
        .iter()
        .cloned()
        .zip(dist.values().iter().copied())
        .collect()
}

fn map_to_dist(map: &BTreeMap<String, f64>, task: &TaskSpec) -> Option<ProbVector> {
    let values: Vec<f64> = task.labels.iter().map(|l| *map.get(l).unwrap_or(&0.0)).collect();
    ProbVector::new(task.labels.clone(), values).ok()
}

/// Load records from line-delimited JSON, re-running the parser on each
/// stored reply. Blank lines are skipped; anything else malformed is an
/// error carrying its 1-based line number.
pub fn load_records(path: &Path, task: &TaskSpec) -> Result<Vec<PredictionRecord>, DatasetError> {
    let file = File::open(path)?;
    let reader = BufReader::new(file);
    let mut records = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let parsed: RecordLine = serde_json::from_str(&line)
            .map_err(|e| DatasetError::Schema(line_no, e.to_string()))?;
        if parsed.text.is_empty() {
            return Err(DatasetError::EmptyText(line_no));
        }
        let gold = canonicalize_label(&parsed.gold_label);
        if !task.labels.contains(&gold) {
            return Err(DatasetError::UnknownGoldLabel {
                line_no,
                label: parsed.gold_label,
                task: task.name.clone(),
            });
        }
        let parse = parse_response(&parsed.response_text, &task.labels);
        let calibrated = parsed
            .calibrated_distribution
            .as_ref()
            .and_then(|m| map_to_dist(m, task));
        records.push(PredictionRecord {
            text: parsed.text,
            gold_label: gold,
            raw_response: Some(RawResponse {
                text: parsed.response_text,
                model_id: parsed.model_id,
                token_temperature: parsed.token_temperature,
            }),
            parse,
            split: parsed.split,
            calibrated,
        });
    }
    Ok(records)
}

/// Write records as line-delimited JSON. A record without a raw response
/// gets an empty `response_text`; everything else round-trips exactly.
pub fn save_records(path: &Path, records: &[PredictionRecord]) -> Result<(), DatasetError> {
    let file = File::create(path)?;
    let mut writer = BufWriter::new(file);
    for rec in records {
        let (response_text, model_id, token_temperature) = match &rec.raw_response {
            Some(raw) => (raw.text.clone(), raw.model_id.clone(), raw.token_temperature),
            None => (String::new(), String::new(), 0.0),
        };
        let line = RecordLine {
            text: rec.text.clone(),
            gold_label: rec.gold_label.clone(),
            response_text,
            model_id,
            token_temperature,
            split: rec.split,
            status: Some(rec.parse.status),
            parsed_distribution: rec.parse.distribution.as_ref().map(dist_to_map),
            calibrated_distribution: rec.calibrated.as_ref().map(dist_to_map),
        };
        serde_json::to_writer(&mut writer, &line)
            .map_err(|e| DatasetError::Schema(0, e.to_string()))?;
        writer.write_all(b"\n")?;
    }
    writer.flush()?;
    Ok(())
}

/// How many records each non-usable status removed.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DropCounts {
    pub refused: usize,
    pub malformed: usize,
    pub unknown_labels: usize,
    pub empty: usize,
}

impl DropCounts {
    pub fn total(&self) -> usize {
        self.refused + self.malformed + self.unknown_labels + self.empty
    }
}

/// Keep only records the parser fully understood.
pub fn filter_parsed(records: Vec<PredictionRecord>) -> (Vec<PredictionRecord>, DropCounts) {
    let mut drops = DropCounts::default();
    let kept = records
        .into_iter()
        .filter(|r| match r.parse.status {
            ParseStatus::Parsed => true,
            ParseStatus::Refused => {
                drops.refused += 1;
                false
            }
            ParseStatus::Malformed => {
                drops.malformed += 1;
                false
            }
            ParseStatus::UnknownLabels => {
                drops.unknown_labels += 1;
                false
            }
            ParseStatus::Empty => {
                drops.empty += 1;
                false
            }
        })
        .collect();
    (kept, drops)
}

/// Restrict every model to the texts that parsed successfully under all
/// models. Output counts are equal across models (texts unique per model),
/// and applying the operation twice changes nothing.
pub fn intersect_by_text(
    per_model: &BTreeMap<String, Vec<PredictionRecord>>,
) -> Result<BTreeMap<String, Vec<PredictionRecord>>, DatasetError> {
    if per_model.len() < 2 {
        return Err(DatasetError::TooFewModels(per_model.len()));
    }
    let mut shared: Option<HashSet<&str>> = None;
    for records in per_model.values() {
        let parsed: HashSet<&str> = records
            .iter()
            .filter(|r| r.parse.status == ParseStatus::Parsed)
            .map(|r| r.text.as_str())
            .collect();
        shared = Some(match shared {
            None => parsed,
            Some(acc) => acc.intersection(&parsed).copied().collect(),
        });
    }
    let shared = shared.unwrap_or_default();
    if shared.is_empty() {
        return Err(DatasetError::EmptyIntersection);
    }
    let mut out = BTreeMap::new();
    for (model, records) in per_model {
        let kept: Vec<PredictionRecord> = records
            .iter()
            .filter(|r| r.parse.status == ParseStatus::Parsed && shared.contains(r.text.as_str()))
            .cloned()
            .collect();
        out.insert(model.clone(), kept);
    }
    Ok(out)
}

/// Parsed records of one split as metric-ready predictions, using the raw
/// verbalized distributions.
pub fn raw_predictions(records: &[PredictionRecord], split: Split) -> Vec<Prediction> {
    records
        .iter()
        .filter(|r| r.split == split)
        .filter_map(|r| {
            r.parse
                .distribution
                .as_ref()
                .map(|d| Prediction::new(d.clone(), rec_gold(r)))
        })
        .collect()
}

/// Same view over the stored calibrated distributions; records without one
/// are skipped.
pub fn calibrated_predictions(records: &[PredictionRecord], split: Split) -> Vec<Prediction> {
    records
        .iter()
        .filter(|r| r.split == split)
        .filter_map(|r| r.calibrated.as_ref().map(|d| Prediction::new(d.clone(), rec_gold(r))))
        .collect()
}

fn rec_gold(r: &PredictionRecord) -> String {
    r.gold_label.clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(text: &str, gold: &str, reply: &str, task: &TaskSpec, split: Split) -> PredictionRecord {
        PredictionRecord {
            text: text.to_string(),
            gold_label: gold.to_string(),
            raw_response: Some(RawResponse {
                text: reply.to_string(),
                model_id: "m".to_string(),
                token_temperature: 0.0,
            }),
            parse: parse_response(reply, &task.labels),
            split,
            calibrated: None,
        }
    }

    #[test]
    fn builtin_tasks() {
        assert_eq!(TaskSpec::imdb().labels, vec!["positive", "negative"]);
        assert_eq!(TaskSpec::emotion().n_classes(), 6);
        let massive = TaskSpec::massive();
        assert_eq!(massive.n_classes(), 60);
        assert_eq!(massive.labels[0], "datetime_query");
        assert_eq!(massive.labels[59], "lists_query");
        assert!(TaskSpec::builtin("imdb").is_some());
        assert!(TaskSpec::builtin("sst2").is_none());
    }

    #[test]
    fn task_labels_canonicalized_and_validated() {
        let t = TaskSpec::new("x", vec![" Positive ".into(), "NEGATIVE".into()], None).unwrap();
        assert_eq!(t.labels, vec!["positive", "negative"]);
        assert!(matches!(
            TaskSpec::new("x", vec!["a".into()], None),
            Err(DatasetError::TooFewLabels(1))
        ));
        assert!(matches!(
            TaskSpec::new("x", vec!["a".into(), "A".into()], None),
            Err(DatasetError::TooFewLabels(1))
        ));
        assert!(matches!(
            TaskSpec::new("x", vec!["a".into(), "b".into()], Some("c".into())),
            Err(DatasetError::UnknownPositiveLabel(_))
        ));
    }

    #[test]
    fn load_three_line_fixture() {
        let task = TaskSpec::imdb();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("records.jsonl");
        let mut f = File::create(&path).unwrap();
        writeln!(
            f,
            r#"{{"text":"good film","gold_label":"positive","response_text":"{{'positive': 0.9, 'negative': 0.1}}","model_id":"m1","token_temperature":0.0,"split":"validation"}}"#
        )
        .unwrap();
        writeln!(
            f,
            r#"{{"text":"bad film","gold_label":"negative","response_text":"I'm sorry, I cannot rate this.","model_id":"m1","token_temperature":0.0,"split":"test"}}"#
        )
        .unwrap();
        writeln!(
            f,
            r#"{{"text":"odd film","gold_label":"positive","response_text":"no dict here","model_id":"m1","token_temperature":1.0,"split":"test"}}"#
        )
        .unwrap();
        let records = load_records(&path, &task).unwrap();
        assert_eq!(records.len(), 3);
        assert_eq!(records[0].parse.status, ParseStatus::Parsed);
        assert_eq!(records[1].parse.status, ParseStatus::Refused);
        assert_eq!(records[2].parse.status, ParseStatus::Malformed);
        assert_eq!(records[0].split, Split::Validation);
    }

    #[test]
    fn load_reports_line_numbers() {
        let task = TaskSpec::imdb();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.jsonl");
        let mut f = File::create(&path).unwrap();
        writeln!(
            f,
            r#"{{"text":"ok","gold_label":"positive","response_text":"x","model_id":"m","token_temperature":0.0,"split":"test"}}"#
        )
        .unwrap();
        writeln!(f, r#"{{"text":"no gold","response_text":"x"}}"#).unwrap();
        match load_records(&path, &task) {
            Err(DatasetError::Schema(line, _)) => assert_eq!(line, 2),
            other => panic!("expected schema error, got {other:?}"),
        }

        let path2 = dir.path().join("badgold.jsonl");
        let mut f2 = File::create(&path2).unwrap();
        writeln!(
            f2,
            r#"{{"text":"ok","gold_label":"neutral","response_text":"x","model_id":"m","token_temperature":0.0,"split":"test"}}"#
        )
        .unwrap();
        match load_records(&path2, &task) {
            Err(DatasetError::UnknownGoldLabel { line_no, .. }) => assert_eq!(line_no, 1),
            other => panic!("expected gold label error, got {other:?}"),
        }
    }

    #[test]
    fn duplicate_texts_preserved() {
        let task = TaskSpec::imdb();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("dup.jsonl");
        let mut f = File::create(&path).unwrap();
        for _ in 0..3 {
            writeln!(
                f,
                r#"{{"text":"same","gold_label":"positive","response_text":"{{'positive': 1.0, 'negative': 0.0}}","model_id":"m","token_temperature":0.0,"split":"test"}}"#
            )
            .unwrap();
        }
        assert_eq!(load_records(&path, &task).unwrap().len(), 3);
    }

    #[test]
    fn save_load_round_trip_is_lossless() {
        let task = TaskSpec::imdb();
        let mut rec = record(
            "good film",
            "positive",
            "{'positive': 0.93, 'negative': 0.07}",
            &task,
            Split::Test,
        );
        rec.calibrated = Some(
            ProbVector::new(task.labels.clone(), vec![0.8123456789012345, 0.1876543210987655]).unwrap(),
        );
        let refused = record("bad film", "negative", "I'm sorry, I cannot.", &task, Split::Validation);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("rt.jsonl");
        save_records(&path, &[rec.clone(), refused.clone()]).unwrap();
        let loaded = load_records(&path, &task).unwrap();
        assert_eq!(loaded, vec![rec, refused]);

        let path2 = dir.path().join("rt2.jsonl");
        save_records(&path2, &loaded).unwrap();
        assert_eq!(
            std::fs::read_to_string(&path).unwrap(),
            std::fs::read_to_string(&path2).unwrap()
        );
    }

    #[test]
    fn filter_parsed_keeps_only_parsed() {
        let task = TaskSpec::imdb();
        let records = vec![
            record("a", "positive", "{'positive': 1.0, 'negative': 0.0}", &task, Split::Test),
            record("b", "negative", "I'm sorry, I cannot.", &task, Split::Test),
            record("c", "positive", "word salad", &task, Split::Test),
            record("d", "negative", "{'positive': 0.4, 'neutral': 0.6}", &task, Split::Test),
            record("e", "positive", "   ", &task, Split::Test),
        ];
        let n = records.len();
        let (kept, drops) = filter_parsed(records);
        assert_eq!(kept.len(), 1);
        assert_eq!(kept[0].text, "a");
        assert_eq!(drops.refused, 1);
        assert_eq!(drops.malformed, 1);
        assert_eq!(drops.unknown_labels, 1);
        assert_eq!(drops.empty, 1);
        assert_eq!(drops.total(), n - kept.len());

        let (again, drops2) = filter_parsed(kept.clone());
        assert_eq!(again, kept);
        assert_eq!(drops2.total(), 0);
    }

    #[test]
    fn intersect_small_example() {
        let task = TaskSpec::imdb();
        let parsed = "{'positive': 1.0, 'negative': 0.0}";
        let a = vec![
            record("t1", "positive", parsed, &task, Split::Test),
            record("t2", "positive", parsed, &task, Split::Test),
            record("t3", "positive", parsed, &task, Split::Test),
        ];
        let b = vec![
            record("t2", "positive", parsed, &task, Split::Test),
            record("t3", "positive", parsed, &task, Split::Test),
            record("t4", "positive", parsed, &task, Split::Test),
        ];
        let mut per_model = BTreeMap::new();
        per_model.insert("A".to_string(), a);
        per_model.insert("B".to_string(), b);
        let out = intersect_by_text(&per_model).unwrap();
        let texts =
            |m: &str| out[m].iter().map(|r| r.text.clone()).collect::<Vec<_>>();
        assert_eq!(texts("A"), vec!["t2", "t3"]);
        assert_eq!(texts("B"), vec!["t2", "t3"]);

        let again = intersect_by_text(&out).unwrap();
        assert_eq!(again, out);
    }

    #[test]
    fn intersect_errors() {
        let task = TaskSpec::imdb();
        let parsed = "{'positive': 1.0, 'negative': 0.0}";
        let mut one = BTreeMap::new();
        one.insert(
            "A".to_string(),
            vec![record("t1", "positive", parsed, &task, Split::Test)],
        );
        assert!(matches!(intersect_by_text(&one), Err(DatasetError::TooFewModels(1))));

        let mut disjoint = BTreeMap::new();
        disjoint.insert(
            "A".to_string(),
            vec![record("t1", "positive", parsed, &task, Split::Test)],
        );
        disjoint.insert(
            "B".to_string(),
            vec![record("t2", "positive", parsed, &task, Split::Test)],
        );
        assert!(matches!(
            intersect_by_text(&disjoint),
            Err(DatasetError::EmptyIntersection)
        ));
    }

    #[test]
    fn intersect_unparsed_records_do_not_count() {
        let task = TaskSpec::imdb();
        let parsed = "{'positive': 1.0, 'negative': 0.0}";
        let a = vec![
            record("t1", "positive", parsed, &task, Split::Test),
            record("t2", "positive", "garbled", &task, Split::Test),
        ];
        let b = vec![
            record("t1", "positive", parsed, &task, Split::Test),
            record("t2", "positive", parsed, &task, Split::Test),
        ];
        let mut per_model = BTreeMap::new();
        per_model.insert("A".to_string(), a);
        per_model.insert("B".to_string(), b);
        let out = intersect_by_text(&per_model).unwrap();
        assert_eq!(out["A"].len(), 1);
        assert_eq!(out["B"].len(), 1);
        assert_eq!(out["B"][0].text, "t1");
    }

    #[test]
    fn intersect_three_models_shaped_like_aggregation_table() {
        // per-model parsed counts {4998, 5000, 5000} with the two failures
        // in the first model -> every model keeps 4998
        let task = TaskSpec::imdb();
        let parsed = "{'positive': 0.9, 'negative': 0.1}";
        let text = |i: usize| format!("example {i:04}");
        let mk = |reply: &str, i: usize| record(&text(i), "positive", reply, &task, Split::Validation);
        let a: Vec<_> = (0..5000)
            .map(|i| {
                if i >= 4998 {
                    mk("no usable reply", i)
                } else {
                    mk(parsed, i)
                }
            })
            .collect();
        let b: Vec<_> = (0..5000).map(|i| mk(parsed, i)).collect();
        let c: Vec<_> = (0..5000).map(|i| mk(parsed, i)).collect();
        let mut per_model = BTreeMap::new();
        per_model.insert("claude-v2".to_string(), a);
        per_model.insert("claude-v3".to_string(), b);
        per_model.insert("mixtral".to_string(), c);
        let out = intersect_by_text(&per_model).unwrap();
        for records in out.values() {
            assert_eq!(records.len(), 4998);
        }
    }

    #[test]
    fn prediction_views_by_split() {
        let task = TaskSpec::imdb();
        let mut records = vec![
            record("a", "positive", "{'positive': 0.9, 'negative': 0.1}", &task, Split::Validation),
            record("b", "negative", "{'positive': 0.2, 'negative': 0.8}", &task, Split::Test),
            record("c", "negative", "not parseable", &task, Split::Test),
        ];
        records[1].calibrated =
            Some(ProbVector::new(task.labels.clone(), vec![0.35, 0.65]).unwrap());

        let val = raw_predictions(&records, Split::Validation);
        assert_eq!(val.len(), 1);
        assert_eq!(val[0].gold, "positive");

        let test = raw_predictions(&records, Split::Test);
        assert_eq!(test.len(), 1);
        assert_eq!(test[0].dist.values(), &[0.2, 0.8]);

        let cal = calibrated_predictions(&records, Split::Test);
        assert_eq!(cal.len(), 1);
        assert_eq!(cal[0].dist.values(), &[0.35, 0.65]);
        assert!(calibrated_predictions(&records, Split::Validation).is_empty());
    }
}
