//! `--backend` values.
//!
//! ```text
//! lexicon                 bundled seed lexicon
//! lexicon:PATH            lexicon TSV file
//! remote                  model server at --endpoint
//! remote:URL              model server at URL
//! stub:PATH               replay script
//! stub-bert | stub-roberta | stub-deberta
//! NAME=SPEC               any of the above, reported as NAME
//! ```

use std::path::PathBuf;
use std::str::FromStr;

use emodrift::{BackendConfig, BackendKind, StubSource};

#[derive(Debug, Clone, PartialEq)]
pub struct BackendSpec {
    pub name: String,
    pub kind: BackendKind,
    pub lexicon_path: Option<PathBuf>,
    pub endpoint: Option<String>,
    pub stub: Option<StubSource>,
}

impl FromStr for BackendSpec {
    type Err = String;

    fn from_str(raw: &str) -> Result<Self, Self::Err> {
        let (name, spec) = match raw.split_once('=') {
            Some((name, spec)) if !name.is_empty() && !name.contains(':') => (name.to_string(), spec),
            _ => (raw.to_string(), raw),
        };
        let (head, arg) = match spec.split_once(':') {
            Some((h, a)) => (h, Some(a)),
            None => (spec, None),
        };
        let mut out = BackendSpec {
            name,
            kind: BackendKind::Lexicon,
            lexicon_path: None,
            endpoint: None,
            stub: None,
        };
        match (head, arg) {
            ("lexicon", path) => out.lexicon_path = path.map(PathBuf::from),
            ("remote", url) => {
                out.kind = BackendKind::Remote;
                out.endpoint = url.map(str::to_string);
            }
            ("stub", Some(path)) => {
                out.kind = BackendKind::Stub;
                out.stub = Some(StubSource::File(PathBuf::from(path)));
            }
            (preset @ ("stub-bert" | "stub-roberta" | "stub-deberta"), None) => {
                out.kind = BackendKind::Stub;
                out.stub = Some(StubSource::Preset(preset.to_string()));
            }
            _ => {
                return Err(format!(
                    "unrecognized backend {raw:?}; expected lexicon[:PATH], remote[:URL], stub:PATH, stub-bert, stub-roberta or stub-deberta"
                ))
            }
        }
        Ok(out)
    }
}

impl BackendSpec {
    /// Concrete backend config; `endpoint` fills in a bare `remote`.
    pub fn to_config(&self, endpoint: Option<&str>, timeout_ms: u64, batch_size: usize) -> BackendConfig {
        BackendConfig {
            kind: self.kind,
            lexicon_path: self.lexicon_path.clone(),
            endpoint_url: self.endpoint.clone().or_else(|| endpoint.map(str::to_string)),
            stub: self.stub.clone(),
            timeout_ms,
            batch_size,
        }
    }
}
