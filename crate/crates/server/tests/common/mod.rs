#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::sync::Arc;

use axum::body::Body;
use axum::http::{Request, StatusCode};
use axum::Router;
use happier_core::criteria::{AffinityTable, Corpus, OfflineDockingProvider, OfflineImpactProvider};
use happier_core::ingest::{ingest_links, InteractionStore};
use happier_server::{router, AppState, Providers, ServerConfig};
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

pub const IMPACT: &str = "Reduce the capacity to phosphorylate MAPT";

pub fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

pub fn read_fixture(name: &str) -> String {
    std::fs::read_to_string(fixture(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn network() -> InteractionStore {
    ingest_links(
        &read_fixture("mapt_network.links.tsv"),
        &read_fixture("mapt_network.info.tsv"),
    )
    .unwrap()
    .0
}

/// Offline literature matcher plus the docking table `affinity_file`.
pub fn offline_providers(affinity_file: &str) -> Providers {
    Providers {
        impact: Some(Arc::new(OfflineImpactProvider::new(Corpus::load(&fixture("corpus")).unwrap()))),
        docking: Some(Arc::new(OfflineDockingProvider::new(
            AffinityTable::load(&fixture(affinity_file)).unwrap(),
        ))),
        ..Providers::default()
    }
}

pub fn app(providers: Providers, config: ServerConfig) -> Router {
    router(AppState::new(network(), providers, config))
}

pub fn offline_app() -> Router {
    app(offline_providers("affinities.tsv"), ServerConfig { seed: Some(1), ..ServerConfig::default() })
}

pub fn new_session_body() -> Value {
    json!({
        "center_symbol": "MAPT",
        "pdb": read_fixture("8p34_fragment.pdb"),
        "impact_text": IMPACT,
        "sdf": read_fixture("roscovitine.sdf"),
    })
}

pub async fn send(app: &Router, req: Request<Body>) -> (StatusCode, Value) {
    let resp = app.clone().oneshot(req).await.unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    let value = if bytes.is_empty() {
        Value::Null
    } else {
        serde_json::from_slice(&bytes).unwrap_or_else(|_| Value::String(String::from_utf8_lossy(&bytes).into()))
    };
    (status, value)
}

pub async fn call(app: &Router, method: &str, uri: &str, body: Option<Value>) -> (StatusCode, Value) {
    let builder = Request::builder().method(method).uri(uri);
    let req = match body {
        Some(b) => builder
            .header("content-type", "application/json")
            .body(Body::from(b.to_string()))
            .unwrap(),
        None => builder.body(Body::empty()).unwrap(),
    };
    send(app, req).await
}

pub async fn create(app: &Router) -> String {
    let (status, body) = call(app, "POST", "/sessions", Some(new_session_body())).await;
    assert_eq!(status, StatusCode::CREATED, "{body}");
    body["session_id"].as_str().unwrap().to_string()
}

/// Every error body carries a stable code and a message.
pub fn assert_api_error(body: &Value, code: &str) {
    assert_eq!(body["code"], code, "{body}");
    assert!(body["message"].as_str().is_some_and(|m| !m.is_empty()), "{body}");
}
