//! HTTP front end for the drift analyzer.
//!
//! * `POST /analyze` with `{"text": "..."}` returns the canonical report JSON.
//! * `GET /health` is a liveness check and never touches the backends.
//!
//! Every non-200 response carries `{"error": {"code": ..., "message": ...}}`.

pub mod config;

use std::sync::Arc;
use std::time::{Duration, Instant};

use axum::body::Bytes;
use axum::extract::rejection::BytesRejection;
use axum::extract::{DefaultBodyLimit, Request, State};
use axum::http::{header, HeaderValue, Method, StatusCode};
use axum::middleware::{self, Next};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::Router;
use emodrift::{AnalyzeError, Analyzer, ClassifyError, RemoteSentiment};
use serde::{Deserialize, Serialize};
use tokio::net::TcpListener;
use tower_http::cors::{AllowOrigin, Any, CorsLayer};

pub use config::{ConfigError, FileConfig, ServiceConfig};

/// Shared, read-only per-process state.
#[derive(Clone, Debug)]
pub struct AppState {
    analyzer: Analyzer,
    backend_kind: &'static str,
    max_input_chars: usize,
    request_timeout: Duration,
}

impl AppState {
    pub fn new(analyzer: Analyzer, max_input_chars: usize, request_timeout: Duration) -> Self {
        Self {
            backend_kind: analyzer.classifier().kind(),
            analyzer,
            max_input_chars,
            request_timeout,
        }
    }

    pub fn from_config(config: &ServiceConfig) -> Result<Self, ConfigError> {
        config.validate()?;
        Ok(Self::new(
            build_analyzer(config)?,
            config.max_input_chars,
            Duration::from_millis(config.request_timeout_ms),
        ))
    }
}

/// Builds the analyzer a config describes. Shared with the CLI so both
/// surfaces produce identical reports.
pub fn build_analyzer(config: &ServiceConfig) -> Result<Analyzer, ConfigError> {
    let classifier = config.backend.build()?;
    let mut analyzer = Analyzer::new(classifier)
        .with_neutral_threshold(config.neutral_threshold)
        .map_err(|e| ConfigError::Invalid(e.to_string()))?;
    if let Some(url) = &config.sentiment_endpoint {
        let timeout = Duration::from_millis(config.backend.timeout_ms);
        analyzer = analyzer.with_sentiment_model(Arc::new(RemoteSentiment::new(url, timeout)));
    }
    Ok(analyzer)
}

#[derive(Debug, Serialize)]
struct ErrorDetail<'a> {
    code: &'a str,
    message: String,
}

#[derive(Debug, Serialize)]
struct ErrorBody<'a> {
    error: ErrorDetail<'a>,
}

/// A structured error response.
#[derive(Debug)]
pub struct ApiError {
    status: StatusCode,
    code: &'static str,
    message: String,
}

impl ApiError {
    fn new(status: StatusCode, code: &'static str, message: impl Into<String>) -> Self {
        Self {
            status,
            code,
            message: message.into(),
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let body = ErrorBody {
            error: ErrorDetail {
                code: self.code,
                message: self.message,
            },
        };
        json_response(
            self.status,
            serde_json::to_string(&body).expect("error body serializes"),
        )
    }
}

fn json_response(status: StatusCode, mut body: String) -> Response {
    body.push('\n');
    (
        status,
        [(header::CONTENT_TYPE, HeaderValue::from_static("application/json"))],
        body,
    )
        .into_response()
}

#[derive(Debug, Deserialize)]
struct AnalyzeRequest {
    text: String,
}

async fn analyze(State(state): State<AppState>, body: Result<Bytes, BytesRejection>) -> Result<Response, ApiError> {
    let body = body.map_err(|rejection| {
        if rejection.status() == StatusCode::PAYLOAD_TOO_LARGE {
            ApiError::new(
                StatusCode::PAYLOAD_TOO_LARGE,
                "input_too_large",
                "request body too large",
            )
        } else {
            ApiError::new(StatusCode::BAD_REQUEST, "malformed_request", rejection.body_text())
        }
    })?;
    let request: AnalyzeRequest = serde_json::from_slice(&body)
        .map_err(|e| ApiError::new(StatusCode::BAD_REQUEST, "malformed_request", e.to_string()))?;
    let chars = request.text.chars().count();
    if chars > state.max_input_chars {
        return Err(ApiError::new(
            StatusCode::PAYLOAD_TOO_LARGE,
            "input_too_large",
            format!("text has {chars} characters; the limit is {}", state.max_input_chars),
        ));
    }

    let analyzer = state.analyzer.clone();
    let job = tokio::task::spawn_blocking(move || analyzer.analyze(&request.text));
    let report = match tokio::time::timeout(state.request_timeout, job).await {
        Err(_) => {
            return Err(ApiError::new(
                StatusCode::BAD_GATEWAY,
                "backend_unavailable",
                "analysis timed out",
            ));
        }
        Ok(joined) => joined
            .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, "internal", e.to_string()))?
            .map_err(analyze_error)?,
    };
    Ok(json_response(StatusCode::OK, report.to_canonical_json()))
}

fn analyze_error(e: AnalyzeError) -> ApiError {
    let message = e.to_string();
    match e {
        AnalyzeError::Classification {
            source: ClassifyError::EmptyInput,
            ..
        } => ApiError::new(StatusCode::BAD_REQUEST, "empty_sentence", message),
        AnalyzeError::Classification { .. } => ApiError::new(StatusCode::BAD_GATEWAY, "backend_unavailable", message),
        AnalyzeError::InvalidThreshold(_) => ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, "internal", message),
    }
}

#[derive(Serialize)]
struct Health<'a> {
    status: &'a str,
    backend: &'a str,
}

async fn health(State(state): State<AppState>) -> Response {
    let body = serde_json::to_string(&Health {
        status: "ok",
        backend: state.backend_kind,
    })
    .expect("serializes");
    json_response(StatusCode::OK, body)
}

async fn not_found() -> ApiError {
    ApiError::new(StatusCode::NOT_FOUND, "not_found", "no such endpoint")
}

async fn method_not_allowed() -> ApiError {
    ApiError::new(
        StatusCode::METHOD_NOT_ALLOWED,
        "method_not_allowed",
        "method not allowed for this endpoint",
    )
}

async fn log_request(request: Request, next: Next) -> Response {
    let method = request.method().clone();
    let path = request.uri().path().to_string();
    let started = Instant::now();
    let response = next.run(request).await;
    tracing::info!(
        %method,
        path,
        status = response.status().as_u16(),
        elapsed_ms = started.elapsed().as_millis() as u64,
        "request"
    );
    response
}

fn cors(origin: Option<&str>) -> CorsLayer {
    let layer = CorsLayer::new()
        .allow_methods([Method::GET, Method::POST])
        .allow_headers([header::CONTENT_TYPE]);
    match origin.and_then(|o| HeaderValue::from_str(o).ok()) {
        Some(o) => layer.allow_origin(AllowOrigin::exact(o)),
        None => layer.allow_origin(Any),
    }
}

/// The service router with an explicit CORS origin (`None` allows any).
pub fn router_with_cors(state: AppState, cors_origin: Option<&str>) -> Router {
    // Leave room for JSON escaping; the character limit is enforced after parsing.
    let body_limit = state.max_input_chars.saturating_mul(8).max(64 * 1024);
    Router::new()
        .route("/analyze", post(analyze))
        .route("/health", get(health))
        .fallback(not_found)
        .method_not_allowed_fallback(method_not_allowed)
        .layer(DefaultBodyLimit::max(body_limit))
        .layer(cors(cors_origin))
        .layer(middleware::from_fn(log_request))
        .with_state(state)
}

pub fn router(state: AppState) -> Router {
    router_with_cors(state, None)
}

/// Serves until `shutdown` resolves.
pub async fn serve<F>(listener: TcpListener, app: Router, shutdown: F) -> std::io::Result<()>
where
    F: std::future::Future<Output = ()> + Send + 'static,
{
    axum::serve(listener, app).with_graceful_shutdown(shutdown).await
}
