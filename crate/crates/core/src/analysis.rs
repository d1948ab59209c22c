//! The end-to-end pipeline: segment, classify, build the timeline, score
//! drift and estimate passage sentiment.

use std::sync::Arc;

use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::classifier::{Classifier, ClassifyError};
use crate::drift::{count_changes, count_transitions, drift_score, EmotionTimeline};
use crate::emotion::{round6, EmotionDistribution, EmotionLabel};
use crate::segment::segment;
use crate::sentiment::{overall_sentiment, SentimentModel, SentimentResult, DEFAULT_NEUTRAL_THRESHOLD};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AnalyzeError {
    #[error("sentence {index}: {source}")]
    Classification {
        index: usize,
        #[source]
        source: ClassifyError,
    },
    #[error("neutral threshold must be in [0.5, 1.0], got {0}")]
    InvalidThreshold(f64),
}

/// Full analysis of one passage.
#[derive(Debug, Clone, PartialEq)]
pub struct DriftReport {
    pub timeline: EmotionTimeline,
    pub num_sentences: usize,
    pub num_transitions: usize,
    pub num_changes: usize,
    pub drift_score: f64,
    pub single_sentence: bool,
    pub overall_sentiment: SentimentResult,
}

impl DriftReport {
    pub fn from_timeline(timeline: EmotionTimeline, overall_sentiment: SentimentResult) -> Self {
        let labels = timeline.labels();
        let (drift_score, single_sentence) = drift_score(&labels);
        Self {
            num_sentences: labels.len(),
            num_transitions: count_transitions(&labels),
            num_changes: count_changes(&labels),
            drift_score,
            single_sentence,
            overall_sentiment,
            timeline,
        }
    }

    pub fn labels(&self) -> Vec<EmotionLabel> {
        self.timeline.labels()
    }

    /// Compact canonical JSON, shared by the service and the CLI.
    pub fn to_canonical_json(&self) -> String {
        serde_json::to_string(self).expect("report serialization is infallible")
    }
}

#[derive(Serialize)]
struct SentenceRecord<'a> {
    index: usize,
    text: &'a str,
    emotion: EmotionLabel,
    scores: &'a EmotionDistribution,
}

impl Serialize for DriftReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let sentences: Vec<SentenceRecord<'_>> = self
            .timeline
            .entries()
            .iter()
            .map(|e| SentenceRecord {
                index: e.span.index,
                text: &e.span.text,
                emotion: e.label,
                scores: &e.distribution,
            })
            .collect();
        let mut s = serializer.serialize_struct("DriftReport", 8)?;
        s.serialize_field("sentences", &sentences)?;
        s.serialize_field("timeline", &self.timeline.labels())?;
        s.serialize_field("num_sentences", &self.num_sentences)?;
        s.serialize_field("num_transitions", &self.num_transitions)?;
        s.serialize_field("num_changes", &self.num_changes)?;
        s.serialize_field("drift_score", &round6(self.drift_score))?;
        s.serialize_field("single_sentence", &self.single_sentence)?;
        s.serialize_field("overall_sentiment", &self.overall_sentiment)?;
        s.end()
    }
}

/// Segments `text` and classifies every sentence in one batch.
pub fn build_timeline(text: &str, backend: &dyn Classifier) -> Result<EmotionTimeline, AnalyzeError> {
    let spans = segment(text);
    if spans.is_empty() {
        return Ok(EmotionTimeline::default());
    }
    let sentences: Vec<&str> = spans.iter().map(|s| s.text.as_str()).collect();
    let distributions = backend
        .classify_batch(&sentences)
        .map_err(|e| AnalyzeError::Classification {
            index: e.index,
            source: e.source,
        })?;
    Ok(EmotionTimeline::new(spans, distributions))
}

/// A configured pipeline. Cheap to clone and safe to share across threads.
#[derive(Clone)]
pub struct Analyzer {
    classifier: Arc<dyn Classifier>,
    sentiment: Option<Arc<dyn SentimentModel>>,
    neutral_threshold: f64,
}

impl std::fmt::Debug for Analyzer {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Analyzer")
            .field("classifier", &self.classifier.kind())
            .field("sentiment_model", &self.sentiment.is_some())
            .field("neutral_threshold", &self.neutral_threshold)
            .finish()
    }
}

impl Analyzer {
    pub fn new(classifier: Arc<dyn Classifier>) -> Self {
        Self {
            classifier,
            sentiment: None,
            neutral_threshold: DEFAULT_NEUTRAL_THRESHOLD,
        }
    }

    pub fn with_sentiment_model(mut self, model: Arc<dyn SentimentModel>) -> Self {
        self.sentiment = Some(model);
        self
    }

    pub fn with_neutral_threshold(mut self, threshold: f64) -> Result<Self, AnalyzeError> {
        if !(0.5..=1.0).contains(&threshold) {
            return Err(AnalyzeError::InvalidThreshold(threshold));
        }
        self.neutral_threshold = threshold;
        Ok(self)
    }

    pub fn classifier(&self) -> &dyn Classifier {
        self.classifier.as_ref()
    }

    pub fn build_timeline(&self, text: &str) -> Result<EmotionTimeline, AnalyzeError> {
        build_timeline(text, self.classifier.as_ref())
    }

    /// Runs the whole pipeline. Any classification failure aborts the
    /// analysis; sentiment model failures fall back to the timeline.
    pub fn analyze(&self, text: &str) -> Result<DriftReport, AnalyzeError> {
        let timeline = self.build_timeline(text)?;
        let sentiment = overall_sentiment(text, &timeline, self.sentiment.as_deref(), self.neutral_threshold);
        Ok(DriftReport::from_timeline(timeline, sentiment))
    }
}
