//! Emotion drift analysis.
//!
//! A passage is split into sentences, each sentence is classified into one of
//! six emotions, and the resulting timeline is summarized by a drift score:
//! the share of adjacent sentence pairs whose dominant emotion differs.
//!
//! ```
//! use std::sync::Arc;
//! use emodrift::{Analyzer, StubClassifier};
//!
//! let analyzer = Analyzer::new(Arc::new(StubClassifier::preset("bert").unwrap()));
//! let report = analyzer
//!     .analyze("I feel overwhelmed today. I tried to reach out for help. Nobody is responding, and I am frustrated.")
//!     .unwrap();
//! assert_eq!(report.num_changes, 1);
//! assert_eq!(report.drift_score, 0.5);
//! ```

pub mod analysis;
pub mod classifier;
pub mod drift;
pub mod emotion;
pub mod eval;
pub mod lexicon;
pub mod segment;
pub mod sentiment;

pub use analysis::{build_timeline, AnalyzeError, Analyzer, DriftReport};
pub use classifier::{
    BackendConfig, BackendKind, BatchError, Classifier, ClassifyError, LexiconClassifier, RemoteClassifier,
    StubClassifier, StubSource,
};
pub use drift::{count_changes, drift_score, EmotionTimeline, TimelineEntry};
pub use emotion::{argmax_label, EmotionDistribution, EmotionLabel};
pub use lexicon::{lexicon_score, Lexicon};
pub use segment::{normalize_whitespace, segment, SentenceSpan};
pub use sentiment::{
    overall_sentiment, sentiment_from_emotions, RemoteSentiment, SentimentLabel, SentimentModel, SentimentResult,
    SentimentSource,
};
