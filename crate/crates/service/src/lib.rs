//! A small stateless JSON API over the lead baseline and ROUGE scoring.
//!
//! | route            | body                                              | reply                          |
//! |------------------|---------------------------------------------------|--------------------------------|
//! | `POST /summarize`| `{"text", "policy"?, "dataset"?}`                  | `{"summary", "policy", "decode"?}` |
//! | `POST /score`    | `{"candidate", "references", "policy"?}`          | `{"precision", "recall", "f1"}` |
//! | `GET /healthz`   |                                                   | `{"status": "ok", "version"}`  |
//!
//! Malformed JSON or an invalid policy gives 400; an empty text or an empty
//! reference list gives 422. Errors are `{"error": message}`.

use std::collections::BTreeMap;
use std::net::SocketAddr;
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::State;
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use leadkit::leadbias::SegmentedArticle;
use leadkit::metrics::{lead_baseline, score_multi_reference, LeadPolicy, RougeScore, ScoringPolicy};
use leadkit::pipeline::{default_decode_params, DecodeParams};
use leadkit::Lexicon;
use serde::{Deserialize, Serialize};
use serde_json::json;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Immutable resources shared by all requests.
#[derive(Debug, Clone)]
pub struct AppState {
    lexicon: Arc<Lexicon>,
    decode: Arc<BTreeMap<String, DecodeParams>>,
}

impl AppState {
    pub fn new(lexicon: Lexicon, decode: BTreeMap<String, DecodeParams>) -> Self {
        AppState {
            lexicon: Arc::new(lexicon),
            decode: Arc::new(decode),
        }
    }

    pub fn lexicon(&self) -> &Lexicon {
        &self.lexicon
    }
}

impl Default for AppState {
    fn default() -> Self {
        AppState::new(Lexicon::default(), default_decode_params())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SummarizeRequest {
    pub text: String,
    /// Defaults to the dataset's convention, or `sentences:3`.
    #[serde(default)]
    pub policy: Option<LeadPolicy>,
    #[serde(default)]
    pub dataset: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummarizeResponse {
    pub summary: String,
    pub policy: LeadPolicy,
    /// Decoding parameters on record for `dataset`, echoed for clients that
    /// compare against neural systems.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decode: Option<DecodeParams>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScoreRequest {
    pub candidate: String,
    pub references: Vec<String>,
    #[serde(default)]
    pub policy: ScoringPolicy,
}

#[derive(Debug)]
pub struct ApiError {
    status: StatusCode,
    message: String,
}

impl ApiError {
    fn bad_request(message: impl ToString) -> Self {
        ApiError {
            status: StatusCode::BAD_REQUEST,
            message: message.to_string(),
        }
    }

    fn unprocessable(message: impl ToString) -> Self {
        ApiError {
            status: StatusCode::UNPROCESSABLE_ENTITY,
            message: message.to_string(),
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(json!({ "error": self.message }))).into_response()
    }
}

fn parse<T: for<'de> Deserialize<'de>>(body: &[u8]) -> Result<T, ApiError> {
    serde_json::from_slice(body).map_err(ApiError::bad_request)
}

/// The `/summarize` computation, without HTTP.
pub fn summarize(state: &AppState, req: &SummarizeRequest) -> Result<SummarizeResponse, ApiError> {
    if req.text.trim().is_empty() {
        return Err(ApiError::unprocessable("text is empty"));
    }
    let policy = req
        .policy
        .or_else(|| req.dataset.as_deref().map(LeadPolicy::for_dataset))
        .unwrap_or_default();
    let article = SegmentedArticle::from_raw("request", &req.text, state.lexicon());
    let summary = lead_baseline(&article, policy).map_err(ApiError::unprocessable)?;
    let decode = req
        .dataset
        .as_ref()
        .and_then(|d| state.decode.get(&d.to_ascii_lowercase()).copied());
    Ok(SummarizeResponse { summary, policy, decode })
}

/// The `/score` computation, without HTTP.
pub fn score(state: &AppState, req: &ScoreRequest) -> Result<RougeScore, ApiError> {
    if req.references.is_empty() {
        return Err(ApiError::unprocessable("references is empty"));
    }
    score_multi_reference(&req.candidate, &req.references, &req.policy, state.lexicon())
        .map_err(ApiError::unprocessable)
}

async fn summarize_handler(State(state): State<AppState>, body: Bytes) -> Result<Json<SummarizeResponse>, ApiError> {
    let req: SummarizeRequest = parse(&body)?;
    summarize(&state, &req).map(Json)
}

async fn score_handler(State(state): State<AppState>, body: Bytes) -> Result<Json<RougeScore>, ApiError> {
    let req: ScoreRequest = parse(&body)?;
    score(&state, &req).map(Json)
}

async fn healthz() -> Json<serde_json::Value> {
    Json(json!({ "status": "ok", "version": VERSION }))
}

pub fn router(state: AppState) -> Router {
    Router::new()
        .route("/summarize", post(summarize_handler))
        .route("/score", post(score_handler))
        .route("/healthz", get(healthz))
        .with_state(state)
}

/// Binds `addr` and serves until the process is stopped.
pub async fn serve(addr: SocketAddr, state: AppState) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    axum::serve(listener, router(state)).await
}
