//! JSON client for out-of-process model servers.
//!
//! Request: `POST {endpoint}` with `{"texts": [...]}`.
//! Response: `200` with `{"results": [[{"label": ..., "score": ...}, ...], ...]}`,
//! where `results[i]` scores `texts[i]`.

use std::time::Duration;

use serde::{Deserialize, Serialize};

use super::{BatchError, Classifier, ClassifyError};
use crate::emotion::{EmotionDistribution, EmotionLabel};

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct RemoteRequest<'a> {
    #[serde(borrow)]
    pub texts: Vec<&'a str>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct LabelScore {
    pub label: String,
    pub score: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct RemoteResponse {
    pub results: Vec<Vec<LabelScore>>,
}

/// Posts sentences to a model server, `batch_size` texts per request.
///
/// Chunks of one batch are sent concurrently; results are re-joined in
/// input order.
#[derive(Debug, Clone)]
pub struct RemoteClassifier {
    endpoint: String,
    agent: ureq::Agent,
    batch_size: usize,
}

impl RemoteClassifier {
    pub fn new(endpoint: impl Into<String>, timeout: Duration, batch_size: usize) -> Self {
        let agent = ureq::AgentBuilder::new().timeout(timeout).build();
        Self {
            endpoint: endpoint.into(),
            agent,
            batch_size: batch_size.max(1),
        }
    }

    pub fn endpoint(&self) -> &str {
        &self.endpoint
    }

    pub fn batch_size(&self) -> usize {
        self.batch_size
    }

    /// Sends one request and returns the raw per-text score lists.
    pub fn post(&self, texts: &[&str]) -> Result<Vec<Vec<LabelScore>>, ClassifyError> {
        let body = RemoteRequest { texts: texts.to_vec() };
        let response = match self.agent.post(&self.endpoint).send_json(&body) {
            Ok(r) => r,
            Err(ureq::Error::Status(code, _)) => {
                return Err(ClassifyError::BackendUnavailable(format!(
                    "server returned HTTP {code}"
                )))
            }
            Err(e) => return Err(ClassifyError::BackendUnavailable(e.to_string())),
        };
        if response.status() != 200 {
            return Err(ClassifyError::BackendUnavailable(format!(
                "server returned HTTP {}",
                response.status()
            )));
        }
        let parsed: RemoteResponse = response
            .into_json()
            .map_err(|e| ClassifyError::MalformedResponse(e.to_string()))?;
        if parsed.results.len() != texts.len() {
            return Err(ClassifyError::MalformedResponse(format!(
                "expected {} results, got {}",
                texts.len(),
                parsed.results.len()
            )));
        }
        Ok(parsed.results)
    }

    /// Classifies `texts`, one request per `batch_size` chunk.
    pub fn remote_classify(&self, texts: &[&str]) -> Result<Vec<EmotionDistribution>, BatchError> {
        if let Some(i) = texts.iter().position(|t| t.trim().is_empty()) {
            return Err(BatchError::new(i, ClassifyError::EmptyInput));
        }
        let chunks: Vec<(usize, &[&str])> = texts
            .chunks(self.batch_size)
            .enumerate()
            .map(|(n, c)| (n * self.batch_size, c))
            .collect();

        let outcomes: Vec<Result<Vec<EmotionDistribution>, BatchError>> = if chunks.len() <= 1 {
            chunks
                .iter()
                .map(|&(offset, c)| self.classify_chunk(offset, c))
                .collect()
        } else {
            std::thread::scope(|scope| {
                let handles: Vec<_> = chunks
                    .iter()
                    .map(|&(offset, c)| scope.spawn(move || self.classify_chunk(offset, c)))
                    .collect();
                handles
                    .into_iter()
                    .map(|h| h.join().expect("remote worker panicked"))
                    .collect()
            })
        };

        let mut out = Vec::with_capacity(texts.len());
        for outcome in outcomes {
            out.extend(outcome?);
        }
        Ok(out)
    }

    fn classify_chunk(&self, offset: usize, texts: &[&str]) -> Result<Vec<EmotionDistribution>, BatchError> {
        let results = self.post(texts).map_err(|e| BatchError::new(offset, e))?;
        results
            .iter()
            .enumerate()
            .map(|(i, scores)| to_distribution(scores).map_err(|e| BatchError::new(offset + i, e)))
            .collect()
    }
}

/// Converts one result list into a distribution. Missing labels get score 0
/// and the result is renormalized; labels outside the alphabet are rejected.
pub(crate) fn to_distribution(scores: &[LabelScore]) -> Result<EmotionDistribution, ClassifyError> {
    let mut raw = [0.0; 6];
    let mut seen = [false; 6];
    for entry in scores {
        let label: EmotionLabel = entry.label.parse().map_err(|_| {
            ClassifyError::MalformedResponse(format!("label {:?} is outside the emotion alphabet", entry.label))
        })?;
        let slot = label.ordinal();
        if seen[slot] {
            return Err(ClassifyError::MalformedResponse(format!("duplicate label {label}")));
        }
        seen[slot] = true;
        raw[slot] = entry.score;
    }
    EmotionDistribution::from_weights(raw).map_err(|e| ClassifyError::MalformedResponse(e.to_string()))
}

impl Classifier for RemoteClassifier {
    fn kind(&self) -> &'static str {
        "remote"
    }

    fn classify(&self, sentence: &str) -> Result<EmotionDistribution, ClassifyError> {
        self.remote_classify(&[sentence])
            .map(|mut v| v.remove(0))
            .map_err(|e| e.source)
    }

    fn classify_batch(&self, sentences: &[&str]) -> Result<Vec<EmotionDistribution>, BatchError> {
        if sentences.is_empty() {
            return Ok(Vec::new());
        }
        self.remote_classify(sentences)
    }
}
