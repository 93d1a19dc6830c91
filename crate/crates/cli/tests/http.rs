use std::sync::Arc;

use axum::body::{to_bytes, Body};
use axum::http::{Request, StatusCode};
use axum::Router;
use pauli_forge::SessionStore;
use pauli_forge_cli::server::router;
use serde_json::{json, Value};
use tower::ServiceExt;

async fn call(app: &Router, method: &str, uri: &str, body: Option<Value>) -> (StatusCode, Value) {
    let req = Request::builder()
        .method(method)
        .uri(uri)
        .header("content-type", "application/json")
        .body(body.map_or_else(Body::empty, |b| Body::from(b.to_string())))
        .unwrap();
    let resp = app.clone().oneshot(req).await.unwrap();
    let status = resp.status();
    let bytes = to_bytes(resp.into_body(), usize::MAX).await.unwrap();
    (status, serde_json::from_slice(&bytes).unwrap_or(Value::Null))
}

fn app() -> Router {
    router(Arc::new(SessionStore::new(4)))
}

const CIRCUIT: &str = "qubits 2\nt 0\ntdg 0\ncx 0 1\n";

#[tokio::test]
async fn open_apply_undo_redo() {
    let app = app();
    let (s, v) = call(&app, "POST", "/sessions", Some(json!({ "circuit": CIRCUIT }))).await;
    assert_eq!(s, StatusCode::OK, "{v}");
    let id = v["id"].as_str().unwrap().to_string();
    assert_eq!(v["stats"]["gate_count"], 3);

    let (s, moves) = call(&app, "GET", &format!("/sessions/{id}/moves"), None).await;
    assert_eq!(s, StatusCode::OK);
    let m = moves
        .as_array()
        .unwrap()
        .iter()
        .find(|m| m["delta"]["gate_count"].as_i64() == Some(-2))
        .expect("a cancelling move")
        .clone();
    let step = json!({ "rule": m["rule"], "anchor": m["anchor"], "params": m.get("params").cloned().unwrap_or(json!({})) });

    let (s, v) = call(&app, "POST", &format!("/sessions/{id}/apply"), Some(step)).await;
    assert_eq!(s, StatusCode::OK, "{v}");
    assert_eq!(v["stats"]["gate_count"], 1);
    assert_eq!(v["equivalent"], true);

    let (s, v) = call(&app, "POST", &format!("/sessions/{id}/undo"), None).await;
    assert_eq!(s, StatusCode::OK);
    assert_eq!(v["stats"]["gate_count"], 3);
    let (s, v) = call(&app, "POST", &format!("/sessions/{id}/redo"), None).await;
    assert_eq!(s, StatusCode::OK);
    assert_eq!(v["stats"]["gate_count"], 1);

    let (s, v) = call(&app, "POST", &format!("/sessions/{id}/redo"), None).await;
    assert_eq!(s, StatusCode::CONFLICT);
    assert_eq!(v["code"], "empty_history");
}

#[tokio::test]
async fn unknown_session_is_404() {
    let (s, v) = call(&app(), "GET", "/sessions/deadbeef/moves", None).await;
    assert_eq!(s, StatusCode::NOT_FOUND);
    assert_eq!(v["code"], "not_found");
}

#[tokio::test]
async fn parse_error_carries_a_span() {
    let (s, v) = call(&app(), "POST", "/sessions", Some(json!({ "circuit": "qubits 2\nzap 0\n" }))).await;
    assert_eq!(s, StatusCode::BAD_REQUEST);
    assert_eq!(v["code"], "parse_error");
    assert_eq!(v["span"]["line"], 2);
}

#[tokio::test]
async fn malformed_body_is_400() {
    let req = Request::builder()
        .method("POST")
        .uri("/sessions")
        .body(Body::from("{not json"))
        .unwrap();
    let resp = app().oneshot(req).await.unwrap();
    assert_eq!(resp.status(), StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn inapplicable_step_is_409() {
    let app = app();
    let (_, v) = call(&app, "POST", "/sessions", Some(json!({ "circuit": CIRCUIT }))).await;
    let id = v["id"].as_str().unwrap();
    let step = json!({ "rule": "CancelAdjacentInverses", "anchor": 1 });
    let (s, v) = call(&app, "POST", &format!("/sessions/{id}/apply"), Some(step)).await;
    assert_eq!(s, StatusCode::CONFLICT, "{v}");
}

#[tokio::test]
async fn builtins_are_listed() {
    let (s, v) = call(&app(), "GET", "/builtins", None).await;
    assert_eq!(s, StatusCode::OK);
    assert!(v["amy-toffoli"].as_str().unwrap().starts_with("qubits 3"));
}
