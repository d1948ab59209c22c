//! The six-label emotion alphabet and per-sentence score distributions.

use std::fmt;
use std::str::FromStr;

use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};

/// One of the six basic emotions.
///
/// Variants are declared in alphabetical order, so the derived `Ord` is the
/// canonical order used for tie-breaking and for serialized score maps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EmotionLabel {
    Anger,
    Fear,
    Joy,
    Love,
    Sadness,
    Surprise,
}

impl EmotionLabel {
    /// All labels in canonical order.
    pub const ALL: [EmotionLabel; 6] = [
        EmotionLabel::Anger,
        EmotionLabel::Fear,
        EmotionLabel::Joy,
        EmotionLabel::Love,
        EmotionLabel::Sadness,
        EmotionLabel::Surprise,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            EmotionLabel::Anger => "anger",
            EmotionLabel::Fear => "fear",
            EmotionLabel::Joy => "joy",
            EmotionLabel::Love => "love",
            EmotionLabel::Sadness => "sadness",
            EmotionLabel::Surprise => "surprise",
        }
    }

    /// Position in [`EmotionLabel::ALL`].
    pub fn ordinal(self) -> usize {
        self as usize
    }
}

impl fmt::Display for EmotionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown emotion label {0:?}")]
pub struct UnknownLabel(pub String);

impl FromStr for EmotionLabel {
    type Err = UnknownLabel;

    /// Accepts only the canonical lowercase spelling.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        EmotionLabel::ALL
            .into_iter()
            .find(|l| l.as_str() == s)
            .ok_or_else(|| UnknownLabel(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DistributionError {
    #[error("score for {label} is not a finite non-negative number: {value}")]
    InvalidScore { label: EmotionLabel, value: f64 },
    #[error("scores sum to zero")]
    ZeroMass,
}

/// Probability scores over the six labels, indexed by [`EmotionLabel::ordinal`].
///
/// Always normalized: every score is in `[0, 1]` and the sum is 1 within 1e-6.
#[derive(Debug, Clone, PartialEq)]
pub struct EmotionDistribution {
    scores: [f64; 6],
}

impl EmotionDistribution {
    /// Normalizes non-negative raw weights into a distribution.
    ///
    /// Weights already summing to 1 (within 1e-9) are kept as-is.
    pub fn from_weights(raw: [f64; 6]) -> Result<Self, DistributionError> {
        for (label, &value) in EmotionLabel::ALL.iter().zip(raw.iter()) {
            if !value.is_finite() || value < 0.0 {
                return Err(DistributionError::InvalidScore { label: *label, value });
            }
        }
        let total: f64 = raw.iter().sum();
        if total <= 0.0 {
            return Err(DistributionError::ZeroMass);
        }
        if (total - 1.0).abs() <= 1e-9 {
            return Ok(Self { scores: raw });
        }
        Ok(Self {
            scores: raw.map(|v| v / total),
        })
    }

    pub fn uniform() -> Self {
        Self { scores: [1.0 / 6.0; 6] }
    }

    /// All mass on one label.
    pub fn one_hot(label: EmotionLabel) -> Self {
        let mut scores = [0.0; 6];
        scores[label.ordinal()] = 1.0;
        Self { scores }
    }

    pub fn score(&self, label: EmotionLabel) -> f64 {
        self.scores[label.ordinal()]
    }

    pub fn scores(&self) -> &[f64; 6] {
        &self.scores
    }

    pub fn iter(&self) -> impl Iterator<Item = (EmotionLabel, f64)> + '_ {
        EmotionLabel::ALL.into_iter().zip(self.scores.iter().copied())
    }

    /// Highest-scoring label; ties go to the label earliest in canonical order.
    pub fn argmax(&self) -> EmotionLabel {
        let mut best = 0;
        for i in 1..6 {
            if self.scores[i] > self.scores[best] {
                best = i;
            }
        }
        EmotionLabel::ALL[best]
    }
}

/// Free-function form of [`EmotionDistribution::argmax`].
pub fn argmax_label(dist: &EmotionDistribution) -> EmotionLabel {
    dist.argmax()
}

/// Rounds to six decimal places for serialization.
pub(crate) fn round6(x: f64) -> f64 {
    (x * 1e6).round() / 1e6
}

impl Serialize for EmotionDistribution {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(6))?;
        for (label, score) in self.iter() {
            map.serialize_entry(label.as_str(), &round6(score))?;
        }
        map.end()
    }
}
