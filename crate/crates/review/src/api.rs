use axum::extract::rejection::JsonRejection;
use axum::extract::{Path, Query, State};
use axum::http::{header, StatusCode};
use axum::response::{Html, IntoResponse, Response};
use axum::routing::get;
use axum::{Json, Router};
use serde::Deserialize;
use serde_json::json;
use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::Arc;
use tower_http::services::ServeDir;

use crate::state::{DEFAULT_SAMPLES, DEFAULT_TOP};
use crate::{allowed_verdicts, ReviewError, ReviewState};

const INDEX_HTML: &str = include_str!("index.html");

impl IntoResponse for ReviewError {
    fn into_response(self) -> Response {
        let (status, body) = match &self {
            ReviewError::UnknownCorpus(_) | ReviewError::UnknownDomain(_) => {
                (StatusCode::NOT_FOUND, json!({ "error": self.to_string() }))
            }
            ReviewError::InvalidVerdict(_) => (
                StatusCode::UNPROCESSABLE_ENTITY,
                json!({ "error": self.to_string(), "allowed": allowed_verdicts() }),
            ),
            ReviewError::EmptyDomain => (StatusCode::UNPROCESSABLE_ENTITY, json!({ "error": self.to_string() })),
            _ => {
                tracing::error!(error = %self, "request failed");
                (StatusCode::INTERNAL_SERVER_ERROR, json!({ "error": self.to_string() }))
            }
        };
        (status, Json(body)).into_response()
    }
}

#[derive(Debug, Deserialize)]
struct TopQuery {
    top: Option<usize>,
}

#[derive(Debug, Deserialize)]
struct SampleQuery {
    n: Option<usize>,
}

#[derive(Debug, Deserialize)]
struct VerdictBody {
    domain: String,
    verdict: String,
    #[serde(default)]
    reason: String,
    #[serde(default)]
    reviewer: String,
}

type Shared = State<Arc<ReviewState>>;

async fn corpora(State(s): Shared) -> impl IntoResponse {
    Json(s.corpora())
}

async fn domains(State(s): Shared, Path(id): Path<String>, Query(q): Query<TopQuery>) -> Response {
    match s.list_domains(&id, q.top.unwrap_or(DEFAULT_TOP)) {
        Ok(rows) => Json(rows).into_response(),
        Err(e) => e.into_response(),
    }
}

async fn samples(
    State(s): Shared,
    Path((id, domain)): Path<(String, String)>,
    Query(q): Query<SampleQuery>,
) -> Response {
    match s.samples(&id, &domain, q.n.unwrap_or(DEFAULT_SAMPLES)) {
        Ok(rows) => Json(rows).into_response(),
        Err(e) => e.into_response(),
    }
}

async fn verdicts(
    State(s): Shared,
    Path(id): Path<String>,
    body: Result<Json<VerdictBody>, JsonRejection>,
) -> Response {
    let Json(body) = match body {
        Ok(b) => b,
        Err(rej) => {
            let body = json!({ "error": rej.body_text(), "allowed": allowed_verdicts() });
            return (rej.status(), Json(body)).into_response();
        }
    };
    match s.record_verdict(&id, &body.domain, &body.verdict, &body.reason, &body.reviewer) {
        Ok(ack) => Json(ack).into_response(),
        Err(e) => e.into_response(),
    }
}

async fn removal_list(State(s): Shared, Path(id): Path<String>) -> Response {
    match s.removal_list(&id) {
        Ok(list) => (
            [(header::CONTENT_TYPE, "text/tab-separated-values; charset=utf-8")],
            list.to_tsv(),
        )
            .into_response(),
        Err(e) => e.into_response(),
    }
}

async fn degradation(State(s): Shared, Path(id): Path<String>, Query(q): Query<TopQuery>) -> Response {
    match s.degradation(&id, q.top.unwrap_or(DEFAULT_TOP)) {
        Ok(d) => Json(d).into_response(),
        Err(e) => e.into_response(),
    }
}

fn api(state: Arc<ReviewState>) -> Router {
    Router::new()
        .route("/api/corpora", get(corpora))
        .route("/api/corpora/{id}/domains", get(domains))
        .route("/api/corpora/{id}/domains/{domain}/samples", get(samples))
        .route("/api/corpora/{id}/verdicts", axum::routing::post(verdicts))
        .route("/api/corpora/{id}/removal-list", get(removal_list))
        .route("/api/corpora/{id}/degradation", get(degradation))
        .with_state(state)
}

/// API routes plus the bundled triage page at `/`.
pub fn router(state: Arc<ReviewState>) -> Router {
    api(state).route("/", get(|| async { Html(INDEX_HTML) }))
}

/// API routes plus static files from `ui_dir` (its `index.html` served at `/`).
pub fn router_with_ui(state: Arc<ReviewState>, ui_dir: impl Into<PathBuf>) -> Router {
    api(state).fallback_service(ServeDir::new(ui_dir.into()))
}

pub async fn serve(app: Router, addr: SocketAddr) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    tracing::info!(%addr, "review service listening");
    axum::serve(listener, app).await
}
