//! Emotion timelines and the drift score.
//!
//! The drift score is the number of emotion changes between adjacent
//! sentences divided by the number of adjacent pairs (`n - 1`). Passages of
//! zero or one sentence have no transitions; they score `0.0` and are flagged
//! as single-sentence.

use crate::emotion::{EmotionDistribution, EmotionLabel};
use crate::segment::SentenceSpan;

/// Number of adjacent pairs whose labels differ.
pub fn count_changes(labels: &[EmotionLabel]) -> usize {
    labels.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of adjacent pairs, `max(n - 1, 0)`.
pub fn count_transitions(labels: &[EmotionLabel]) -> usize {
    labels.len().saturating_sub(1)
}

/// Drift score and single-sentence flag for a label sequence.
pub fn drift_score(labels: &[EmotionLabel]) -> (f64, bool) {
    let transitions = count_transitions(labels);
    if transitions == 0 {
        return (0.0, true);
    }
    (count_changes(labels) as f64 / transitions as f64, false)
}

#[derive(Debug, Clone, PartialEq)]
pub struct TimelineEntry {
    pub span: SentenceSpan,
    pub label: EmotionLabel,
    pub distribution: EmotionDistribution,
}

/// Per-sentence dominant emotions in passage order.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct EmotionTimeline {
    entries: Vec<TimelineEntry>,
}

impl EmotionTimeline {
    /// Pairs spans with distributions; each label is the distribution's argmax.
    ///
    /// Panics if the two lists differ in length.
    pub fn new(spans: Vec<SentenceSpan>, distributions: Vec<EmotionDistribution>) -> Self {
        assert_eq!(spans.len(), distributions.len(), "one distribution per sentence");
        let entries = spans
            .into_iter()
            .zip(distributions)
            .map(|(span, distribution)| TimelineEntry {
                label: distribution.argmax(),
                span,
                distribution,
            })
            .collect();
        Self { entries }
    }

    pub fn entries(&self) -> &[TimelineEntry] {
        &self.entries
    }

    pub fn labels(&self) -> Vec<EmotionLabel> {
        self.entries.iter().map(|e| e.label).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use EmotionLabel::*;

    #[test]
    fn worked_examples() {
        assert_eq!(count_changes(&[Fear, Fear, Anger]), 1);
        assert_eq!(drift_score(&[Fear, Fear, Anger]), (0.5, false));
        assert_eq!(count_changes(&[Surprise, Sadness, Anger]), 2);
        assert_eq!(drift_score(&[Surprise, Sadness, Anger]), (1.0, false));
        assert_eq!(drift_score(&[Fear, Joy, Anger]), (1.0, false));
    }

    #[test]
    fn degenerate_sequences() {
        assert_eq!(count_changes(&[Joy]), 0);
        assert_eq!(count_changes(&[]), 0);
        assert_eq!(drift_score(&[Joy, Joy, Joy, Joy]), (0.0, false));
        assert_eq!(drift_score(&[Joy]), (0.0, true));
        assert_eq!(drift_score(&[]), (0.0, true));
        assert_eq!(count_transitions(&[]), 0);
    }

    #[test]
    fn timeline_labels_follow_argmax() {
        let spans = crate::segment::segment("One. Two.");
        let t = EmotionTimeline::new(
            spans,
            vec![EmotionDistribution::one_hot(Love), EmotionDistribution::uniform()],
        );
        assert_eq!(t.labels(), vec![Love, Anger]);
    }
}
