use std::fmt::Write as _;

use emodrift::DriftReport;

/// Plain-ASCII report: one row per sentence, then timeline, drift and sentiment.
pub fn report_table(report: &DriftReport) -> String {
    let mut out = String::new();
    if report.num_sentences == 0 {
        out.push_str("No sentences detected.\n");
    } else {
        let _ = writeln!(out, "{:>3}  {:<8}  {:>5}  sentence", "#", "emotion", "score");
        let _ = writeln!(out, "{}", "-".repeat(60));
        for entry in report.timeline.entries() {
            let _ = writeln!(
                out,
                "{:>3}  {:<8}  {:>5.2}  {}",
                entry.span.index + 1,
                entry.label.as_str(),
                entry.distribution.score(entry.label),
                entry.span.text
            );
        }
        out.push('\n');
        let labels: Vec<&str> = report.labels().iter().map(|l| l.as_str()).collect();
        let _ = writeln!(out, "Emotion Timeline: {}", labels.join(" -> "));
    }
    let _ = write!(out, "Drift Score: {:.2}", report.drift_score);
    if report.single_sentence {
        out.push_str(" (single sentence, no transitions)");
    } else {
        let _ = write!(
            out,
            " ({} of {} transitions changed)",
            report.num_changes, report.num_transitions
        );
    }
    out.push('\n');
    let s = &report.overall_sentiment;
    let source = match s.source {
        emodrift::SentimentSource::Model => "model",
        emodrift::SentimentSource::EmotionFallback => "emotion-fallback",
    };
    let label = match s.label {
        emodrift::SentimentLabel::Positive => "positive",
        emodrift::SentimentLabel::Negative => "negative",
        emodrift::SentimentLabel::Neutral => "neutral",
    };
    let _ = writeln!(out, "Overall Sentiment: {label} ({:.2}, {source})", s.score);
    out
}
