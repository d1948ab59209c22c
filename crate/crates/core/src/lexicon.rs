//! Weighted emotion lexicon and the bag-of-words scoring rule.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use crate::emotion::{EmotionDistribution, EmotionLabel};

/// The lexicon shipped with the crate, ten entries per label.
pub const SEED_LEXICON_TSV: &str = include_str!("../data/seed_lexicon.tsv");

pub const DEFAULT_SMOOTHING: f64 = 0.01;

#[derive(Debug, thiserror::Error)]
pub enum LexiconError {
    #[error("cannot read lexicon {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: duplicate token {token:?}")]
    DuplicateToken { line: usize, token: String },
    #[error("lexicon has no entry for {0}")]
    MissingLabel(EmotionLabel),
    #[error("smoothing must be a finite positive number, got {0}")]
    InvalidSmoothing(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct LexiconEntry {
    pub label: EmotionLabel,
    pub weight: f64,
}

/// Token to (label, weight) map plus an additive smoothing constant.
#[derive(Debug, Clone)]
pub struct Lexicon {
    entries: HashMap<String, LexiconEntry>,
    smoothing: f64,
}

impl Lexicon {
    /// Builds a lexicon from `(token, label, weight)` triples.
    pub fn new<I, S>(entries: I, smoothing: f64) -> Result<Self, LexiconError>
    where
        I: IntoIterator<Item = (S, EmotionLabel, f64)>,
        S: Into<String>,
    {
        let mut map = HashMap::new();
        for (i, (token, label, weight)) in entries.into_iter().enumerate() {
            let token = token.into();
            insert_entry(&mut map, i + 1, token, label, weight)?;
        }
        Self::validated(map, smoothing)
    }

    /// Parses the tab-separated lexicon format. Lines starting with `#` and
    /// blank lines are skipped.
    pub fn from_tsv(source: &str, smoothing: f64) -> Result<Self, LexiconError> {
        let mut map = HashMap::new();
        for (i, raw) in source.lines().enumerate() {
            let line = i + 1;
            if raw.trim().is_empty() || raw.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = raw.split('\t').collect();
            let [token, label, weight] = fields[..] else {
                return Err(LexiconError::Parse {
                    line,
                    message: format!("expected 3 tab-separated fields, found {}", fields.len()),
                });
            };
            let label: EmotionLabel =
                label
                    .trim()
                    .parse()
                    .map_err(|e: crate::emotion::UnknownLabel| LexiconError::Parse {
                        line,
                        message: e.to_string(),
                    })?;
            let weight: f64 = weight.trim().parse().map_err(|_| LexiconError::Parse {
                line,
                message: format!("invalid weight {:?}", weight.trim()),
            })?;
            insert_entry(&mut map, line, token.trim().to_string(), label, weight)?;
        }
        Self::validated(map, smoothing)
    }

    pub fn load(path: impl AsRef<Path>, smoothing: f64) -> Result<Self, LexiconError> {
        let path = path.as_ref();
        let source = std::fs::read_to_string(path).map_err(|source| LexiconError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_tsv(&source, smoothing)
    }

    /// The bundled seed lexicon with [`DEFAULT_SMOOTHING`].
    pub fn seed() -> Self {
        Self::from_tsv(SEED_LEXICON_TSV, DEFAULT_SMOOTHING).expect("bundled lexicon is valid")
    }

    fn validated(entries: HashMap<String, LexiconEntry>, smoothing: f64) -> Result<Self, LexiconError> {
        if !(smoothing.is_finite() && smoothing > 0.0) {
            return Err(LexiconError::InvalidSmoothing(smoothing));
        }
        for label in EmotionLabel::ALL {
            if !entries.values().any(|e| e.label == label) {
                return Err(LexiconError::MissingLabel(label));
            }
        }
        Ok(Self { entries, smoothing })
    }

    pub fn get(&self, token: &str) -> Option<&LexiconEntry> {
        self.entries.get(token)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn smoothing(&self) -> f64 {
        self.smoothing
    }

    /// Copy with every weight and the smoothing constant multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self, LexiconError> {
        let entries = self
            .entries
            .iter()
            .map(|(t, e)| (t.clone(), e.label, e.weight * factor));
        Self::new(entries, self.smoothing * factor)
    }
}

fn insert_entry(
    map: &mut HashMap<String, LexiconEntry>,
    line: usize,
    token: String,
    label: EmotionLabel,
    weight: f64,
) -> Result<(), LexiconError> {
    if token.is_empty() || !token.chars().all(char::is_alphanumeric) || token.to_lowercase() != token {
        return Err(LexiconError::Parse {
            line,
            message: format!("token {token:?} must be lowercase alphanumeric"),
        });
    }
    if !(weight.is_finite() && weight > 0.0) {
        return Err(LexiconError::Parse {
            line,
            message: format!("weight must be positive, got {weight}"),
        });
    }
    if map.contains_key(&token) {
        return Err(LexiconError::DuplicateToken { line, token });
    }
    map.insert(token, LexiconEntry { label, weight });
    Ok(())
}

/// Lowercases `sentence` and splits it on runs of non-alphanumeric chars.
pub fn tokenize(sentence: &str) -> Vec<String> {
    sentence
        .to_lowercase()
        .split(|c: char| !c.is_alphanumeric())
        .filter(|t| !t.is_empty())
        .map(str::to_string)
        .collect()
}

/// Scores a sentence: `raw[label] = smoothing + sum of matched weights`,
/// normalized to sum to one. Returns `None` for a blank sentence.
pub fn lexicon_score(lexicon: &Lexicon, sentence: &str) -> Option<EmotionDistribution> {
    if sentence.trim().is_empty() {
        return None;
    }
    // Counting first and summing in token order keeps the result independent
    // of word order, down to the last bit.
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    for token in tokenize(sentence) {
        *counts.entry(token).or_default() += 1;
    }
    let mut raw = [lexicon.smoothing; 6];
    for (token, count) in &counts {
        if let Some(entry) = lexicon.get(token) {
            raw[entry.label.ordinal()] += entry.weight * *count as f64;
        }
    }
    Some(EmotionDistribution::from_weights(raw).expect("smoothing keeps mass positive"))
}
