//! Passage-level sentiment: from a sentiment model server when configured,
//! otherwise derived from the emotion timeline.

use std::time::Duration;

use serde::{Serialize, Serializer};

use crate::classifier::{ClassifyError, RemoteClassifier};
use crate::drift::EmotionTimeline;
use crate::emotion::{round6, EmotionLabel};

pub const DEFAULT_NEUTRAL_THRESHOLD: f64 = 0.6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SentimentLabel {
    Positive,
    Negative,
    Neutral,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SentimentSource {
    #[serde(rename = "model")]
    Model,
    #[serde(rename = "emotion-fallback")]
    EmotionFallback,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SentimentResult {
    pub label: SentimentLabel,
    #[serde(serialize_with = "serialize_rounded")]
    pub score: f64,
    pub source: SentimentSource,
}

fn serialize_rounded<S: Serializer>(value: &f64, serializer: S) -> Result<S::Ok, S::Error> {
    serializer.serialize_f64(round6(*value))
}

/// Polarity used by the fallback path.
pub fn polarity(label: EmotionLabel) -> SentimentLabel {
    match label {
        EmotionLabel::Joy | EmotionLabel::Love => SentimentLabel::Positive,
        EmotionLabel::Sadness | EmotionLabel::Anger | EmotionLabel::Fear => SentimentLabel::Negative,
        EmotionLabel::Surprise => SentimentLabel::Neutral,
    }
}

/// Majority polarity over the timeline. Ties and empty timelines are neutral;
/// the score is the winning polarity's share of sentences.
pub fn sentiment_from_emotions(timeline: &EmotionTimeline) -> SentimentResult {
    let total = timeline.len();
    let (mut pos, mut neg, mut neu) = (0usize, 0usize, 0usize);
    for entry in timeline.entries() {
        match polarity(entry.label) {
            SentimentLabel::Positive => pos += 1,
            SentimentLabel::Negative => neg += 1,
            SentimentLabel::Neutral => neu += 1,
        }
    }
    let best = pos.max(neg).max(neu);
    let winners = [pos, neg, neu].iter().filter(|&&c| c == best).count();
    let (label, count) = if total == 0 {
        (SentimentLabel::Neutral, 0)
    } else if winners > 1 {
        (SentimentLabel::Neutral, best)
    } else if best == pos {
        (SentimentLabel::Positive, pos)
    } else if best == neg {
        (SentimentLabel::Negative, neg)
    } else {
        (SentimentLabel::Neutral, neu)
    };
    SentimentResult {
        label,
        score: if total == 0 { 0.0 } else { count as f64 / total as f64 },
        source: SentimentSource::EmotionFallback,
    }
}

/// A passage-level sentiment model returning a label and its confidence.
pub trait SentimentModel: Send + Sync {
    fn predict(&self, passage: &str) -> Result<(SentimentLabel, f64), ClassifyError>;
}

/// Sentiment model server speaking the same wire protocol as the emotion
/// backends, with labels `positive`/`negative` (case-insensitive, optionally
/// `neutral`). The highest-scoring entry wins.
#[derive(Debug, Clone)]
pub struct RemoteSentiment {
    client: RemoteClassifier,
}

impl RemoteSentiment {
    pub fn new(endpoint: impl Into<String>, timeout: Duration) -> Self {
        Self {
            client: RemoteClassifier::new(endpoint, timeout, 1),
        }
    }
}

impl SentimentModel for RemoteSentiment {
    fn predict(&self, passage: &str) -> Result<(SentimentLabel, f64), ClassifyError> {
        let results = self.client.post(&[passage])?;
        let mut best: Option<(SentimentLabel, f64)> = None;
        for entry in &results[0] {
            let label = match entry.label.to_ascii_lowercase().as_str() {
                "positive" => SentimentLabel::Positive,
                "negative" => SentimentLabel::Negative,
                "neutral" => SentimentLabel::Neutral,
                other => {
                    return Err(ClassifyError::MalformedResponse(format!(
                        "unknown sentiment label {other:?}"
                    )))
                }
            };
            if !(0.0..=1.0).contains(&entry.score) {
                return Err(ClassifyError::MalformedResponse(format!(
                    "confidence {} outside [0, 1]",
                    entry.score
                )));
            }
            if best.is_none_or(|(_, s)| entry.score > s) {
                best = Some((label, entry.score));
            }
        }
        best.ok_or_else(|| ClassifyError::MalformedResponse("empty sentiment result".into()))
    }
}

/// Passage sentiment. Uses `model` when given, mapping confidences below
/// `neutral_threshold` to neutral; falls back to the timeline on any model
/// error or when no model is configured.
pub fn overall_sentiment(
    text: &str,
    timeline: &EmotionTimeline,
    model: Option<&dyn SentimentModel>,
    neutral_threshold: f64,
) -> SentimentResult {
    if let (Some(model), false) = (model, text.trim().is_empty()) {
        match model.predict(text) {
            Ok((label, confidence)) => {
                let label = if confidence < neutral_threshold {
                    SentimentLabel::Neutral
                } else {
                    label
                };
                return SentimentResult {
                    label,
                    score: confidence,
                    source: SentimentSource::Model,
                };
            }
            Err(e) => tracing::warn!(error = %e, "sentiment model failed; using emotion fallback"),
        }
    }
    sentiment_from_emotions(timeline)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::emotion::EmotionDistribution;
    use crate::segment::segment;
    use EmotionLabel::*;

    fn timeline(labels: &[EmotionLabel]) -> EmotionTimeline {
        let text: Vec<String> = (0..labels.len()).map(|i| format!("Sentence {i}.")).collect();
        let spans = segment(&text.join(" "));
        EmotionTimeline::new(spans, labels.iter().map(|&l| EmotionDistribution::one_hot(l)).collect())
    }

    struct Fixed(Result<(SentimentLabel, f64), ClassifyError>);

    impl SentimentModel for Fixed {
        fn predict(&self, _: &str) -> Result<(SentimentLabel, f64), ClassifyError> {
            self.0.clone()
        }
    }

    #[test]
    fn fallback_majority() {
        let r = sentiment_from_emotions(&timeline(&[Fear, Fear, Anger]));
        assert_eq!(
            (r.label, r.score, r.source),
            (SentimentLabel::Negative, 1.0, SentimentSource::EmotionFallback)
        );
        assert_eq!(
            sentiment_from_emotions(&timeline(&[Joy, Sadness])).label,
            SentimentLabel::Neutral
        );
        let empty = sentiment_from_emotions(&EmotionTimeline::default());
        assert_eq!((empty.label, empty.score), (SentimentLabel::Neutral, 0.0));
        let r = sentiment_from_emotions(&timeline(&[Joy, Love, Surprise]));
        assert_eq!(r.label, SentimentLabel::Positive);
        assert!((r.score - 2.0 / 3.0).abs() < 1e-12);
        assert_eq!(
            sentiment_from_emotions(&timeline(&[Surprise])).label,
            SentimentLabel::Neutral
        );
    }

    #[test]
    fn model_threshold() {
        let t = timeline(&[Joy]);
        let strong = Fixed(Ok((SentimentLabel::Negative, 0.98)));
        let r = overall_sentiment("Text.", &t, Some(&strong), 0.6);
        assert_eq!((r.label, r.source), (SentimentLabel::Negative, SentimentSource::Model));
        let weak = Fixed(Ok((SentimentLabel::Positive, 0.55)));
        let r = overall_sentiment("Text.", &t, Some(&weak), 0.6);
        assert_eq!((r.label, r.score), (SentimentLabel::Neutral, 0.55));
    }

    #[test]
    fn model_failure_falls_back() {
        let t = timeline(&[Fear, Fear, Anger]);
        let down = Fixed(Err(ClassifyError::BackendUnavailable("down".into())));
        let r = overall_sentiment("Text.", &t, Some(&down), 0.6);
        assert_eq!(
            (r.label, r.source),
            (SentimentLabel::Negative, SentimentSource::EmotionFallback)
        );
        let r = overall_sentiment("Text.", &t, None, 0.6);
        assert_eq!(r.label, SentimentLabel::Negative);
    }

    #[test]
    fn serialized_form() {
        let r = SentimentResult {
            label: SentimentLabel::Negative,
            score: 0.98,
            source: SentimentSource::Model,
        };
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            r#"{"label":"negative","score":0.98,"source":"model"}"#
        );
    }
}
