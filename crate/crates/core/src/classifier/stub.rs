//! Replay backend for reproducible examples and tests.

use std::collections::HashMap;
use std::path::Path;

use super::{BatchError, Classifier, ClassifyError};
use crate::emotion::{EmotionDistribution, EmotionLabel};
use crate::segment::normalize_whitespace;

#[derive(Debug, thiserror::Error)]
pub enum StubError {
    #[error("cannot read stub file {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("stub line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("stub has no labels")]
    Empty,
    #[error("unknown stub preset {0:?} (expected bert, roberta or deberta)")]
    UnknownPreset(String),
}

#[derive(Debug, Clone)]
enum Mode {
    /// `labels[i % len]` for the i-th sentence of a batch.
    Sequence(Vec<EmotionLabel>),
    /// Lookup by lowercased, whitespace-normalized text.
    Keyed(HashMap<String, EmotionLabel>),
}

/// Returns one-hot distributions from a fixed script.
///
/// In sequence mode a batch is answered positionally, cycling through the
/// script, and a single `classify` call answers with the first label. In
/// keyed mode each text is looked up; unknown texts fail with
/// `BackendUnavailable`.
#[derive(Debug, Clone)]
pub struct StubClassifier {
    mode: Mode,
}

fn key(text: &str) -> String {
    normalize_whitespace(&text.to_lowercase())
}

impl StubClassifier {
    pub fn sequence(labels: Vec<EmotionLabel>) -> Result<Self, StubError> {
        if labels.is_empty() {
            return Err(StubError::Empty);
        }
        Ok(Self {
            mode: Mode::Sequence(labels),
        })
    }

    pub fn keyed<I, S>(entries: I) -> Self
    where
        I: IntoIterator<Item = (S, EmotionLabel)>,
        S: AsRef<str>,
    {
        let map = entries.into_iter().map(|(t, l)| (key(t.as_ref()), l)).collect();
        Self { mode: Mode::Keyed(map) }
    }

    /// Built-in scripts for the three-sentence overwhelmed/help/frustrated
    /// passage, as predicted by three transformer models.
    pub fn preset(name: &str) -> Result<Self, StubError> {
        use EmotionLabel::*;
        let labels = match name {
            "bert" | "bert_distil" | "stub-bert" => vec![Fear, Fear, Anger],
            "roberta" | "roberta_distil" | "stub-roberta" => vec![Surprise, Sadness, Anger],
            "deberta" | "deberta_base" | "stub-deberta" => vec![Fear, Joy, Anger],
            other => return Err(StubError::UnknownPreset(other.to_string())),
        };
        Self::sequence(labels)
    }

    /// Parses a stub script: one `label` per line (sequence mode) or one
    /// `text<TAB>label` per line (keyed mode). `#` comments and blank lines
    /// are skipped; mixing the two forms is an error.
    pub fn from_script(source: &str) -> Result<Self, StubError> {
        let mut sequence = Vec::new();
        let mut keyed = Vec::new();
        for (i, raw) in source.lines().enumerate() {
            let line = i + 1;
            if raw.trim().is_empty() || raw.starts_with('#') {
                continue;
            }
            let parse = |s: &str| {
                s.trim().parse::<EmotionLabel>().map_err(|e| StubError::Parse {
                    line,
                    message: e.to_string(),
                })
            };
            match raw.rsplit_once('\t') {
                Some((text, label)) => keyed.push((text.to_string(), parse(label)?)),
                None => sequence.push(parse(raw)?),
            }
            if !sequence.is_empty() && !keyed.is_empty() {
                return Err(StubError::Parse {
                    line,
                    message: "cannot mix keyed and sequence lines".into(),
                });
            }
        }
        if !keyed.is_empty() {
            Ok(Self::keyed(keyed))
        } else {
            Self::sequence(sequence)
        }
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, StubError> {
        let path = path.as_ref();
        let source = std::fs::read_to_string(path).map_err(|source| StubError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_script(&source)
    }

    fn answer(&self, position: usize, text: &str) -> Result<EmotionDistribution, ClassifyError> {
        if text.trim().is_empty() {
            return Err(ClassifyError::EmptyInput);
        }
        let label = match &self.mode {
            Mode::Sequence(labels) => labels[position % labels.len()],
            Mode::Keyed(map) => *map
                .get(&key(text))
                .ok_or_else(|| ClassifyError::BackendUnavailable(format!("stub has no entry for {text:?}")))?,
        };
        Ok(EmotionDistribution::one_hot(label))
    }
}

impl Classifier for StubClassifier {
    fn kind(&self) -> &'static str {
        "stub"
    }

    fn classify(&self, sentence: &str) -> Result<EmotionDistribution, ClassifyError> {
        self.answer(0, sentence)
    }

    fn classify_batch(&self, sentences: &[&str]) -> Result<Vec<EmotionDistribution>, BatchError> {
        sentences
            .iter()
            .enumerate()
            .map(|(i, s)| self.answer(i, s).map_err(|e| BatchError::new(i, e)))
            .collect()
    }
}
