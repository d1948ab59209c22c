use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Duration;

use super::{Classifier, LexiconClassifier, RemoteClassifier, StubClassifier, StubError};
use crate::lexicon::{Lexicon, LexiconError, DEFAULT_SMOOTHING};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BackendKind {
    Lexicon,
    Remote,
    Stub,
}

impl BackendKind {
    pub fn as_str(self) -> &'static str {
        match self {
            BackendKind::Lexicon => "lexicon",
            BackendKind::Remote => "remote",
            BackendKind::Stub => "stub",
        }
    }
}

impl fmt::Display for BackendKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BackendKind {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "lexicon" => Ok(BackendKind::Lexicon),
            "remote" => Ok(BackendKind::Remote),
            "stub" => Ok(BackendKind::Stub),
            other => Err(ConfigError::UnknownKind(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StubSource {
    Preset(String),
    File(PathBuf),
}

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("unknown backend kind {0:?}")]
    UnknownKind(String),
    #[error("{0} backend requires {1}")]
    MissingField(BackendKind, &'static str),
    #[error("{0} must be at least 1")]
    NotPositive(&'static str),
    #[error(transparent)]
    Lexicon(#[from] LexiconError),
    #[error(transparent)]
    Stub(#[from] StubError),
}

/// Declarative description of a classifier backend.
#[derive(Debug, Clone, PartialEq)]
pub struct BackendConfig {
    pub kind: BackendKind,
    /// Lexicon TSV; the bundled seed lexicon when absent.
    pub lexicon_path: Option<PathBuf>,
    pub endpoint_url: Option<String>,
    pub stub: Option<StubSource>,
    pub timeout_ms: u64,
    pub batch_size: usize,
}

impl Default for BackendConfig {
    fn default() -> Self {
        Self {
            kind: BackendKind::Lexicon,
            lexicon_path: None,
            endpoint_url: None,
            stub: None,
            timeout_ms: 10_000,
            batch_size: 16,
        }
    }
}

impl BackendConfig {
    pub fn lexicon() -> Self {
        Self::default()
    }

    pub fn remote(endpoint: impl Into<String>) -> Self {
        Self {
            kind: BackendKind::Remote,
            endpoint_url: Some(endpoint.into()),
            ..Self::default()
        }
    }

    pub fn stub(source: StubSource) -> Self {
        Self {
            kind: BackendKind::Stub,
            stub: Some(source),
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.timeout_ms < 1 {
            return Err(ConfigError::NotPositive("timeout_ms"));
        }
        if self.batch_size < 1 {
            return Err(ConfigError::NotPositive("batch_size"));
        }
        match self.kind {
            BackendKind::Remote if self.endpoint_url.is_none() => {
                Err(ConfigError::MissingField(self.kind, "endpoint_url"))
            }
            BackendKind::Stub if self.stub.is_none() => Err(ConfigError::MissingField(self.kind, "a stub source")),
            _ => Ok(()),
        }
    }

    pub fn build(&self) -> Result<Arc<dyn Classifier>, ConfigError> {
        self.validate()?;
        Ok(match self.kind {
            BackendKind::Lexicon => {
                let lexicon = match &self.lexicon_path {
                    Some(p) => Lexicon::load(p, DEFAULT_SMOOTHING)?,
                    None => Lexicon::seed(),
                };
                Arc::new(LexiconClassifier::new(lexicon))
            }
            BackendKind::Remote => Arc::new(RemoteClassifier::new(
                self.endpoint_url.clone().expect("validated"),
                Duration::from_millis(self.timeout_ms),
                self.batch_size,
            )),
            BackendKind::Stub => Arc::new(match self.stub.as_ref().expect("validated") {
                StubSource::Preset(name) => StubClassifier::preset(name)?,
                StubSource::File(path) => StubClassifier::load(path)?,
            }),
        })
    }
}
