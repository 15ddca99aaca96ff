//! JSON endpoints under `/api`.

use std::sync::Arc;
use std::time::{Duration, Instant};

use axum::extract::{DefaultBodyLimit, Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use mathpar::cancel::CancelToken;
use mathpar::session::{clear_environment, execute_section, Diagnostic, ExecutionResult};
use serde::{Deserialize, Serialize};

use crate::config::Config;
use crate::store::{SessionStore, StoreError};

/// Largest accepted `source`, in bytes.
pub const MAX_SOURCE_BYTES: usize = 256 * 1024;

#[derive(Debug, Clone)]
pub struct AppState {
    pub store: Arc<SessionStore>,
    pub eval_timeout: Duration,
}

impl AppState {
    pub fn new(config: &Config) -> Self {
        AppState {
            store: Arc::new(SessionStore::new(config.session_ttl)),
            eval_timeout: config.eval_timeout,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputMode {
    #[default]
    Both,
    Mathpar,
    Latex,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RunRequest {
    pub source: String,
    #[serde(default)]
    pub output_mode: OutputMode,
}

/// An output with the renderings not requested left `null`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputBody {
    pub label: Option<String>,
    pub mathpar: Option<String>,
    pub latex: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RunResponse {
    pub outputs: Vec<OutputBody>,
    pub diagnostics: Vec<Diagnostic>,
    pub space_name: String,
    pub floatpos: u32,
}

impl RunResponse {
    fn new(result: ExecutionResult, mode: OutputMode, space_name: String, floatpos: u32) -> Self {
        let outputs = result
            .outputs
            .into_iter()
            .map(|o| OutputBody {
                label: o.label,
                mathpar: (mode != OutputMode::Latex).then_some(o.mathpar),
                latex: (mode != OutputMode::Mathpar).then_some(o.latex),
            })
            .collect();
        RunResponse {
            outputs,
            diagnostics: result.diagnostics,
            space_name,
            floatpos,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SessionCreated {
    pub session_id: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Health {
    pub status: String,
    pub version: String,
}

/// Transport and session errors; evaluation errors travel as diagnostics.
#[derive(Debug)]
pub enum ApiError {
    Store(StoreError),
    TooLarge(usize),
    Internal(String),
}

impl From<StoreError> for ApiError {
    fn from(e: StoreError) -> Self {
        ApiError::Store(e)
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let (status, message) = match self {
            ApiError::Store(e @ StoreError::Unknown(_)) => (StatusCode::NOT_FOUND, e.to_string()),
            ApiError::Store(e @ StoreError::Expired(_)) => (StatusCode::GONE, e.to_string()),
            ApiError::TooLarge(n) => (
                StatusCode::PAYLOAD_TOO_LARGE,
                format!("source is {n} bytes; the limit is {MAX_SOURCE_BYTES}"),
            ),
            ApiError::Internal(m) => (StatusCode::INTERNAL_SERVER_ERROR, m),
        };
        (status, Json(serde_json::json!({ "error": message }))).into_response()
    }
}

pub fn router(state: AppState) -> Router {
    Router::new()
        .route("/api/health", get(health))
        .route("/api/sessions", post(create_session))
        .route("/api/sessions/{id}", axum::routing::delete(delete_session))
        .route("/api/sessions/{id}/run", post(run))
        .route("/api/sessions/{id}/clear", post(clear))
        // Leave room for JSON escaping; the source limit is checked in `run`.
        .layer(DefaultBodyLimit::max(4 * MAX_SOURCE_BYTES))
        .with_state(state)
}

async fn health() -> Json<Health> {
    Json(Health {
        status: "ok".into(),
        version: env!("CARGO_PKG_VERSION").into(),
    })
}

async fn create_session(State(state): State<AppState>) -> (StatusCode, Json<SessionCreated>) {
    let rec = state.store.create();
    (
        StatusCode::CREATED,
        Json(SessionCreated {
            session_id: rec.id.clone(),
        }),
    )
}

async fn delete_session(
    State(state): State<AppState>,
    Path(id): Path<String>,
) -> Result<StatusCode, ApiError> {
    state.store.remove(&id)?;
    Ok(StatusCode::NO_CONTENT)
}

async fn clear(
    State(state): State<AppState>,
    Path(id): Path<String>,
) -> Result<StatusCode, ApiError> {
    let rec = state.store.get(&id)?;
    clear_environment(&mut *rec.env.lock().await);
    Ok(StatusCode::NO_CONTENT)
}

async fn run(
    State(state): State<AppState>,
    Path(id): Path<String>,
    Json(req): Json<RunRequest>,
) -> Result<Json<RunResponse>, ApiError> {
    if req.source.len() > MAX_SOURCE_BYTES {
        return Err(ApiError::TooLarge(req.source.len()));
    }
    let rec = state.store.get(&id)?;
    // Runs on one session queue on this lock; other sessions are unaffected.
    let mut env = rec.env.clone().lock_owned().await;
    let cancel = CancelToken::with_deadline(Instant::now() + state.eval_timeout);
    let mode = req.output_mode;
    let response = tokio::task::spawn_blocking(move || {
        let result = execute_section(&mut env, &req.source, &cancel);
        RunResponse::new(result, mode, env.space.to_string(), env.space.floatpos)
    })
    .await
    .map_err(|e| ApiError::Internal(format!("evaluation task failed: {e}")))?;
    rec.touch();
    Ok(Json(response))
}
