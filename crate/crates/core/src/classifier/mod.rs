//! Classifier backends: anything that maps a sentence to an [`EmotionDistribution`].

mod config;
mod lexicon;
mod remote;
mod stub;

pub use self::config::{BackendConfig, BackendKind, ConfigError, StubSource};
pub use self::lexicon::LexiconClassifier;
pub use self::remote::{LabelScore, RemoteClassifier, RemoteRequest, RemoteResponse};
pub use self::stub::{StubClassifier, StubError};

use crate::emotion::EmotionDistribution;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ClassifyError {
    #[error("sentence is empty")]
    EmptyInput,
    #[error("backend unavailable: {0}")]
    BackendUnavailable(String),
    #[error("malformed backend response: {0}")]
    MalformedResponse(String),
}

/// A batch failure, pointing at the first input the failure is attributed to.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("input {index}: {source}")]
pub struct BatchError {
    pub index: usize,
    #[source]
    pub source: ClassifyError,
}

impl BatchError {
    pub fn new(index: usize, source: ClassifyError) -> Self {
        Self { index, source }
    }
}

/// A sentence-level emotion classifier.
///
/// Implementations are immutable once built and may be shared across threads.
pub trait Classifier: Send + Sync {
    /// Short backend kind, e.g. `"lexicon"`.
    fn kind(&self) -> &'static str;

    fn classify(&self, sentence: &str) -> Result<EmotionDistribution, ClassifyError>;

    /// Classifies every sentence, preserving order. Fails as a whole if any
    /// sentence fails.
    fn classify_batch(&self, sentences: &[&str]) -> Result<Vec<EmotionDistribution>, BatchError> {
        sentences
            .iter()
            .enumerate()
            .map(|(i, s)| self.classify(s).map_err(|e| BatchError::new(i, e)))
            .collect()
    }
}

/// Free-function form of [`Classifier::classify`].
pub fn classify(backend: &dyn Classifier, sentence: &str) -> Result<EmotionDistribution, ClassifyError> {
    backend.classify(sentence)
}

/// Free-function form of [`Classifier::classify_batch`].
pub fn classify_batch(backend: &dyn Classifier, sentences: &[&str]) -> Result<Vec<EmotionDistribution>, BatchError> {
    backend.classify_batch(sentences)
}
