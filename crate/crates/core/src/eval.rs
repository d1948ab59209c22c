//! Accuracy benchmarking of classifier backends over a labeled dataset.
//!
//! Datasets are newline-delimited JSON (`{"text": ..., "label": <int>}`) with
//! a sidecar label map (`<int>\t<emotion>` per line). Each record is
//! lowercased and whitespace-normalized, then classified as one unit.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize, Serializer};

use crate::classifier::{Classifier, ClassifyError};
use crate::emotion::{round6, EmotionLabel};
use crate::segment::normalize_whitespace;

/// Lowercases, then collapses whitespace.
pub fn preprocess(text: &str) -> String {
    normalize_whitespace(&text.to_lowercase())
}

#[derive(Debug, thiserror::Error)]
pub enum DatasetError {
    #[error("file not found: {0}")]
    FileNotFound(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: unknown label {value}")]
    UnknownLabel { line: usize, value: String },
    #[error("label map: {0}")]
    LabelMap(String),
    #[error("{} malformed lines; first: {}", .0.len(), .0[0])]
    Malformed(Vec<DatasetError>),
}

fn read(path: &Path) -> Result<String, DatasetError> {
    std::fs::read_to_string(path).map_err(|source| {
        if source.kind() == std::io::ErrorKind::NotFound {
            DatasetError::FileNotFound(path.display().to_string())
        } else {
            DatasetError::Io {
                path: path.display().to_string(),
                source,
            }
        }
    })
}

/// Integer class index to emotion, covering each emotion exactly once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelMap {
    by_index: HashMap<i64, EmotionLabel>,
}

impl LabelMap {
    pub fn new(pairs: impl IntoIterator<Item = (i64, EmotionLabel)>) -> Result<Self, DatasetError> {
        let mut by_index = HashMap::new();
        for (index, label) in pairs {
            if by_index.values().any(|&l| l == label) {
                return Err(DatasetError::LabelMap(format!("{label} is mapped more than once")));
            }
            if by_index.insert(index, label).is_some() {
                return Err(DatasetError::LabelMap(format!(
                    "index {index} is mapped more than once"
                )));
            }
        }
        if let Some(missing) = EmotionLabel::ALL.iter().find(|l| !by_index.values().any(|v| v == *l)) {
            return Err(DatasetError::LabelMap(format!("{missing} is not mapped")));
        }
        Ok(Self { by_index })
    }

    pub fn parse(source: &str) -> Result<Self, DatasetError> {
        let mut pairs = Vec::new();
        for (i, raw) in source.lines().enumerate() {
            if raw.trim().is_empty() || raw.starts_with('#') {
                continue;
            }
            let bad = |message: String| DatasetError::Parse { line: i + 1, message };
            let (index, label) = raw
                .split_once('\t')
                .ok_or_else(|| bad("expected <int><TAB><emotion>".into()))?;
            let index: i64 = index
                .trim()
                .parse()
                .map_err(|_| bad(format!("invalid index {:?}", index.trim())))?;
            let label: EmotionLabel = label
                .trim()
                .parse()
                .map_err(|e: crate::emotion::UnknownLabel| bad(e.to_string()))?;
            pairs.push((index, label));
        }
        Self::new(pairs)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, DatasetError> {
        Self::parse(&read(path.as_ref())?)
    }

    pub fn get(&self, index: i64) -> Option<EmotionLabel> {
        self.by_index.get(&index).copied()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EvalRecord {
    pub text: String,
    pub gold: EmotionLabel,
}

#[derive(Deserialize)]
struct RawRecord {
    text: String,
    label: serde_json::Value,
}

/// Parses dataset lines. Blank lines are skipped; every malformed line is
/// collected and reported together.
pub fn parse_dataset(source: &str, labels: &LabelMap) -> Result<Vec<EvalRecord>, DatasetError> {
    let mut records = Vec::new();
    let mut problems = Vec::new();
    for (i, raw) in source.lines().enumerate() {
        let line = i + 1;
        if raw.trim().is_empty() {
            continue;
        }
        let parsed: RawRecord = match serde_json::from_str(raw) {
            Ok(r) => r,
            Err(e) => {
                problems.push(DatasetError::Parse {
                    line,
                    message: e.to_string(),
                });
                continue;
            }
        };
        if parsed.text.trim().is_empty() {
            problems.push(DatasetError::Parse {
                line,
                message: "empty text".into(),
            });
            continue;
        }
        match parsed.label.as_i64().and_then(|n| labels.get(n)) {
            Some(gold) => records.push(EvalRecord {
                text: parsed.text,
                gold,
            }),
            None => problems.push(DatasetError::UnknownLabel {
                line,
                value: parsed.label.to_string(),
            }),
        }
    }
    match problems.len() {
        0 => {
            if records.is_empty() {
                tracing::warn!("dataset contains no records");
            }
            Ok(records)
        }
        1 => Err(problems.remove(0)),
        _ => Err(DatasetError::Malformed(problems)),
    }
}

pub fn load_dataset(path: impl AsRef<Path>, labels: &LabelMap) -> Result<Vec<EvalRecord>, DatasetError> {
    parse_dataset(&read(path.as_ref())?, labels)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct LabelCounts {
    pub gold_count: usize,
    pub correct_count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvalResult {
    pub backend_name: String,
    pub total: usize,
    pub correct: usize,
    #[serde(serialize_with = "serialize_rounded")]
    pub accuracy: f64,
    pub per_label: BTreeMap<EmotionLabel, LabelCounts>,
    pub failures: usize,
}

fn serialize_rounded<S: Serializer>(value: &f64, serializer: S) -> Result<S::Ok, S::Error> {
    serializer.serialize_f64(round6(*value))
}

#[derive(Debug, thiserror::Error)]
pub enum EvalError {
    #[error("no records to evaluate")]
    EmptyDataset,
    #[error("no backends to evaluate")]
    NoBackends,
    #[error("backend {backend}: every record failed; first error: {first_error}")]
    AllFailed {
        backend: String,
        first_error: ClassifyError,
    },
    #[error("every backend failed")]
    AllBackendsFailed(Vec<BackendFailure>),
}

/// Tallies `(prediction, gold)` pairs into an [`EvalResult`]. Failed
/// predictions count toward `total` and `failures` only.
pub fn tally(
    backend_name: &str,
    outcomes: impl IntoIterator<Item = (Option<EmotionLabel>, EmotionLabel)>,
) -> EvalResult {
    let mut per_label: BTreeMap<EmotionLabel, LabelCounts> =
        EmotionLabel::ALL.iter().map(|&l| (l, LabelCounts::default())).collect();
    let (mut total, mut correct, mut failures) = (0, 0, 0);
    for (predicted, gold) in outcomes {
        total += 1;
        let Some(predicted) = predicted else {
            failures += 1;
            continue;
        };
        let counts = per_label.get_mut(&gold).expect("all labels present");
        counts.gold_count += 1;
        if predicted == gold {
            counts.correct_count += 1;
            correct += 1;
        }
    }
    let scored = total - failures;
    EvalResult {
        backend_name: backend_name.to_string(),
        total,
        correct,
        accuracy: if scored > 0 {
            correct as f64 / scored as f64
        } else {
            0.0
        },
        per_label,
        failures,
    }
}

fn predict_all(backend: &dyn Classifier, texts: &[String]) -> Vec<Result<EmotionLabel, ClassifyError>> {
    texts
        .par_iter()
        .map(|t| backend.classify(t).map(|d| d.argmax()))
        .collect()
}

fn evaluate_preprocessed(
    name: &str,
    backend: &dyn Classifier,
    texts: &[String],
    golds: &[EmotionLabel],
) -> Result<(EvalResult, Vec<Option<EmotionLabel>>), EvalError> {
    let outcomes = predict_all(backend, texts);
    let mut first_error = None;
    let mut predictions = Vec::with_capacity(outcomes.len());
    for (i, outcome) in outcomes.into_iter().enumerate() {
        match outcome {
            Ok(label) => predictions.push(Some(label)),
            Err(e) => {
                tracing::warn!(backend = name, record = i, error = %e, "classification failed");
                first_error.get_or_insert(e);
                predictions.push(None);
            }
        }
    }
    if predictions.iter().all(Option::is_none) {
        return Err(EvalError::AllFailed {
            backend: name.to_string(),
            first_error: first_error.expect("non-empty dataset"),
        });
    }
    let result = tally(name, predictions.iter().copied().zip(golds.iter().copied()));
    Ok((result, predictions))
}

/// Accuracy of one backend over `records`.
pub fn evaluate(name: &str, backend: &dyn Classifier, records: &[EvalRecord]) -> Result<EvalResult, EvalError> {
    if records.is_empty() {
        return Err(EvalError::EmptyDataset);
    }
    let texts: Vec<String> = records.iter().map(|r| preprocess(&r.text)).collect();
    let golds: Vec<EmotionLabel> = records.iter().map(|r| r.gold).collect();
    evaluate_preprocessed(name, backend, &texts, &golds).map(|(r, _)| r)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BackendFailure {
    pub backend: String,
    pub error: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Prediction {
    pub backend: String,
    /// `None` when the backend failed on this record.
    pub emotion: Option<EmotionLabel>,
}

/// A record on which the evaluated backends did not all agree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Disagreement {
    pub index: usize,
    pub text: String,
    pub gold: EmotionLabel,
    pub predictions: Vec<Prediction>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonReport {
    /// Sorted by accuracy, highest first.
    pub results: Vec<EvalResult>,
    pub failed: Vec<BackendFailure>,
    pub disagreements: Vec<Disagreement>,
}

pub type NamedBackend = (String, Arc<dyn Classifier>);

/// Evaluates every backend over the same preprocessed records.
pub fn compare(backends: &[NamedBackend], records: &[EvalRecord]) -> Result<ComparisonReport, EvalError> {
    if backends.is_empty() {
        return Err(EvalError::NoBackends);
    }
    if records.is_empty() {
        return Err(EvalError::EmptyDataset);
    }
    let texts: Vec<String> = records.iter().map(|r| preprocess(&r.text)).collect();
    let golds: Vec<EmotionLabel> = records.iter().map(|r| r.gold).collect();

    let mut results = Vec::new();
    let mut failed = Vec::new();
    let mut columns: Vec<(String, Vec<Option<EmotionLabel>>)> = Vec::new();
    for (name, backend) in backends {
        match evaluate_preprocessed(name, backend.as_ref(), &texts, &golds) {
            Ok((result, predictions)) => {
                results.push(result);
                columns.push((name.clone(), predictions));
            }
            Err(e) => failed.push(BackendFailure {
                backend: name.clone(),
                error: e.to_string(),
            }),
        }
    }
    if results.is_empty() {
        return Err(EvalError::AllBackendsFailed(failed));
    }
    results.sort_by(|a, b| b.accuracy.total_cmp(&a.accuracy));

    let mut disagreements = Vec::new();
    for (i, text) in texts.iter().enumerate() {
        let first = columns[0].1[i];
        if columns.iter().all(|(_, p)| p[i] == first) {
            continue;
        }
        disagreements.push(Disagreement {
            index: i,
            text: text.clone(),
            gold: golds[i],
            predictions: columns
                .iter()
                .map(|(name, p)| Prediction {
                    backend: name.clone(),
                    emotion: p[i],
                })
                .collect(),
        });
    }
    Ok(ComparisonReport {
        results,
        failed,
        disagreements,
    })
}

impl ComparisonReport {
    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization is infallible")
    }

    /// Plain-ASCII rendering for terminals.
    pub fn render_table(&self) -> String {
        let width = self
            .results
            .iter()
            .map(|r| r.backend_name.len())
            .chain(self.failed.iter().map(|f| f.backend.len()))
            .chain(std::iter::once("backend".len()))
            .max()
            .unwrap_or(7);
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<width$}  {:>8}  {:>7}  {:>6}  {:>8}",
            "backend", "accuracy", "correct", "total", "failures"
        );
        let _ = writeln!(out, "{}", "-".repeat(width + 39));
        for r in &self.results {
            let _ = writeln!(
                out,
                "{:<width$}  {:>8.4}  {:>7}  {:>6}  {:>8}",
                r.backend_name, r.accuracy, r.correct, r.total, r.failures
            );
        }
        for f in &self.failed {
            let _ = writeln!(out, "{:<width$}  FAILED: {}", f.backend, f.error);
        }
        if !self.disagreements.is_empty() {
            let _ = writeln!(out, "\ndisagreements ({}):", self.disagreements.len());
            for d in &self.disagreements {
                let preds: Vec<String> = d
                    .predictions
                    .iter()
                    .map(|p| format!("{}={}", p.backend, p.emotion.map_or("error", |l| l.as_str())))
                    .collect();
                let _ = writeln!(out, "  [{}] gold={} {}  {:?}", d.index, d.gold, preds.join(" "), d.text);
            }
        }
        out
    }
}
