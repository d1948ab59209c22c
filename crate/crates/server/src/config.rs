//! Service configuration: a flat `key = value` file plus environment overrides.
//!
//! ```text
//! bind = "127.0.0.1:8080"
//! backend = "remote"            # lexicon | remote | stub
//! endpoint = "http://127.0.0.1:9000/classify"
//! sentiment_endpoint = "http://127.0.0.1:9001/sentiment"
//! neutral_threshold = 0.6
//! max_input_chars = 20000
//! ```
//!
//! `EMODRIFT_BIND`, `EMODRIFT_BACKEND` and `EMODRIFT_ENDPOINT` override the
//! corresponding keys.

use std::path::{Path, PathBuf};

use emodrift::sentiment::DEFAULT_NEUTRAL_THRESHOLD;
use emodrift::{BackendConfig, BackendKind, StubSource};
use serde::Deserialize;

pub const DEFAULT_BIND: &str = "127.0.0.1:8080";
pub const DEFAULT_MAX_INPUT_CHARS: usize = 20_000;
pub const DEFAULT_REQUEST_TIMEOUT_MS: u64 = 30_000;

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid config: {0}")]
    Parse(String),
    #[error("invalid config: {0}")]
    Invalid(String),
    #[error(transparent)]
    Backend(#[from] emodrift::classifier::ConfigError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ServiceConfig {
    pub bind_address: String,
    pub backend: BackendConfig,
    pub sentiment_endpoint: Option<String>,
    pub neutral_threshold: f64,
    pub max_input_chars: usize,
    pub request_timeout_ms: u64,
    /// Allowed CORS origin; any origin when unset.
    pub cors_origin: Option<String>,
}

impl Default for ServiceConfig {
    fn default() -> Self {
        Self {
            bind_address: DEFAULT_BIND.to_string(),
            backend: BackendConfig::default(),
            sentiment_endpoint: None,
            neutral_threshold: DEFAULT_NEUTRAL_THRESHOLD,
            max_input_chars: DEFAULT_MAX_INPUT_CHARS,
            request_timeout_ms: DEFAULT_REQUEST_TIMEOUT_MS,
            cors_origin: None,
        }
    }
}

/// Keys accepted in the config file; every key is optional.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub bind: Option<String>,
    pub backend: Option<String>,
    pub endpoint: Option<String>,
    pub lexicon_path: Option<PathBuf>,
    pub stub: Option<String>,
    pub stub_file: Option<PathBuf>,
    pub timeout_ms: Option<u64>,
    pub batch_size: Option<usize>,
    pub sentiment_endpoint: Option<String>,
    pub neutral_threshold: Option<f64>,
    pub max_input_chars: Option<usize>,
    pub request_timeout_ms: Option<u64>,
    pub cors_origin: Option<String>,
}

impl FileConfig {
    pub fn parse(source: &str) -> Result<Self, ConfigError> {
        toml::from_str(source).map_err(|e| ConfigError::Parse(e.to_string()))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, ConfigError> {
        let path = path.as_ref();
        let source = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&source)
    }

    /// Applies `EMODRIFT_*` overrides read through `var`.
    pub fn apply_env(&mut self, var: impl Fn(&str) -> Option<String>) {
        if let Some(v) = var("EMODRIFT_BIND") {
            self.bind = Some(v);
        }
        if let Some(v) = var("EMODRIFT_BACKEND") {
            self.backend = Some(v);
        }
        if let Some(v) = var("EMODRIFT_ENDPOINT") {
            self.endpoint = Some(v);
        }
    }

    /// Layers `other` on top of `self`: fields set in `other` win.
    pub fn merge(self, other: FileConfig) -> FileConfig {
        FileConfig {
            bind: other.bind.or(self.bind),
            backend: other.backend.or(self.backend),
            endpoint: other.endpoint.or(self.endpoint),
            lexicon_path: other.lexicon_path.or(self.lexicon_path),
            stub: other.stub.or(self.stub),
            stub_file: other.stub_file.or(self.stub_file),
            timeout_ms: other.timeout_ms.or(self.timeout_ms),
            batch_size: other.batch_size.or(self.batch_size),
            sentiment_endpoint: other.sentiment_endpoint.or(self.sentiment_endpoint),
            neutral_threshold: other.neutral_threshold.or(self.neutral_threshold),
            max_input_chars: other.max_input_chars.or(self.max_input_chars),
            request_timeout_ms: other.request_timeout_ms.or(self.request_timeout_ms),
            cors_origin: other.cors_origin.or(self.cors_origin),
        }
    }

    pub fn resolve(self) -> Result<ServiceConfig, ConfigError> {
        let defaults = ServiceConfig::default();
        let kind: BackendKind = match self.backend.as_deref() {
            Some(k) => k.parse()?,
            None if self.stub.is_some() || self.stub_file.is_some() => BackendKind::Stub,
            None => BackendKind::Lexicon,
        };
        let stub = match (self.stub, self.stub_file) {
            (Some(_), Some(_)) => return Err(ConfigError::Invalid("set only one of stub and stub_file".into())),
            (Some(name), None) => Some(StubSource::Preset(name)),
            (None, Some(path)) => Some(StubSource::File(path)),
            (None, None) => None,
        };
        let backend = BackendConfig {
            kind,
            lexicon_path: self.lexicon_path,
            endpoint_url: self.endpoint,
            stub,
            timeout_ms: self.timeout_ms.unwrap_or(defaults.backend.timeout_ms),
            batch_size: self.batch_size.unwrap_or(defaults.backend.batch_size),
        };
        backend.validate()?;
        let config = ServiceConfig {
            bind_address: self.bind.unwrap_or(defaults.bind_address),
            backend,
            sentiment_endpoint: self.sentiment_endpoint,
            neutral_threshold: self.neutral_threshold.unwrap_or(defaults.neutral_threshold),
            max_input_chars: self.max_input_chars.unwrap_or(defaults.max_input_chars),
            request_timeout_ms: self.request_timeout_ms.unwrap_or(defaults.request_timeout_ms),
            cors_origin: self.cors_origin,
        };
        config.validate()?;
        Ok(config)
    }
}

impl ServiceConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if !(0.5..=1.0).contains(&self.neutral_threshold) {
            return Err(ConfigError::Invalid(format!(
                "neutral_threshold must be in [0.5, 1.0], got {}",
                self.neutral_threshold
            )));
        }
        if self.max_input_chars < 1 {
            return Err(ConfigError::Invalid("max_input_chars must be at least 1".into()));
        }
        if self.request_timeout_ms < 1 {
            return Err(ConfigError::Invalid("request_timeout_ms must be at least 1".into()));
        }
        self.backend.validate()?;
        Ok(())
    }
}
