//! JSON over HTTP access to derivation sessions.

use std::collections::BTreeMap;
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use pauli_forge::passes::{builtin_text, BUILTIN_NAMES};
use pauli_forge::text::{parse, print, SourceSpan};
use pauli_forge::{Error, RewriteStep, SessionStore, SessionView};

type Store = Arc<SessionStore>;

#[derive(Debug, Serialize)]
pub struct ApiError {
    pub code: &'static str,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub span: Option<SourceSpan>,
    #[serde(skip)]
    status: StatusCode,
}

impl ApiError {
    fn bad_request(message: String) -> ApiError {
        ApiError {
            code: "bad_request",
            message,
            span: None,
            status: StatusCode::BAD_REQUEST,
        }
    }
}

impl From<Error> for ApiError {
    fn from(e: Error) -> ApiError {
        let message = e.to_string();
        let (status, code, span) = match &e {
            Error::Parse(p) => (StatusCode::BAD_REQUEST, "parse_error", Some(p.span)),
            Error::Validation(_) => (StatusCode::BAD_REQUEST, "validation_error", None),
            Error::InvalidArgument(_) => (StatusCode::BAD_REQUEST, "invalid_argument", None),
            Error::Unsupported(_) => (StatusCode::BAD_REQUEST, "unsupported", None),
            Error::Resource(_) => (StatusCode::BAD_REQUEST, "resource_limit", None),
            Error::UnknownSession(_) => (StatusCode::NOT_FOUND, "not_found", None),
            Error::NotApplicable { .. } => (StatusCode::CONFLICT, "not_applicable", None),
            Error::EmptyHistory(_) => (StatusCode::CONFLICT, "empty_history", None),
            Error::Script { .. } | Error::Soundness(_) => {
                (StatusCode::INTERNAL_SERVER_ERROR, "soundness", None)
            }
        };
        ApiError {
            code,
            message,
            span,
            status,
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(&self)).into_response()
    }
}

type ApiResult<T> = Result<Json<T>, ApiError>;

#[derive(Debug, Deserialize)]
struct OpenRequest {
    circuit: String,
}

fn body<T: for<'de> Deserialize<'de>>(bytes: &Bytes) -> Result<T, ApiError> {
    serde_json::from_slice(bytes).map_err(|e| ApiError::bad_request(format!("malformed request body: {e}")))
}

fn view_json(v: SessionView) -> Value {
    json!({
        "id": v.id,
        "stats": v.stats,
        "circuit": print(&v.circuit, true),
        "equivalent": v.equivalent,
        "cursor": v.cursor,
        "history_len": v.history_len,
    })
}

async fn open(State(store): State<Store>, bytes: Bytes) -> ApiResult<Value> {
    let req: OpenRequest = body(&bytes)?;
    let c = parse(&req.circuit).map_err(Error::from)?;
    Ok(Json(view_json(store.open(c)?)))
}

async fn moves(State(store): State<Store>, Path(id): Path<String>) -> ApiResult<Value> {
    Ok(Json(serde_json::to_value(store.moves(&id)?).expect("moves serialize")))
}

async fn apply(State(store): State<Store>, Path(id): Path<String>, bytes: Bytes) -> ApiResult<Value> {
    let step: RewriteStep = body(&bytes)?;
    Ok(Json(view_json(store.apply(&id, step)?)))
}

async fn undo(State(store): State<Store>, Path(id): Path<String>) -> ApiResult<Value> {
    Ok(Json(view_json(store.undo(&id)?)))
}

async fn redo(State(store): State<Store>, Path(id): Path<String>) -> ApiResult<Value> {
    Ok(Json(view_json(store.redo(&id)?)))
}

async fn builtins() -> Json<BTreeMap<&'static str, &'static str>> {
    Json(
        BUILTIN_NAMES
            .iter()
            .map(|&n| (n, builtin_text(n).expect("listed builtin")))
            .collect(),
    )
}

pub fn router(store: Store) -> Router {
    Router::new()
        .route("/sessions", post(open))
        .route("/sessions/{id}/moves", get(moves))
        .route("/sessions/{id}/apply", post(apply))
        .route("/sessions/{id}/undo", post(undo))
        .route("/sessions/{id}/redo", post(redo))
        .route("/builtins", get(builtins))
        .with_state(store)
}

pub async fn serve(port: u16, capacity: usize) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(("127.0.0.1", port)).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(Arc::new(SessionStore::new(capacity)))).await
}
