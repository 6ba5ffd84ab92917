use std::collections::{BTreeMap, BTreeSet, HashMap};

use axum::body::Body;
use axum::extract::{DefaultBodyLimit, FromRequest, Multipart, Path, Query, Request, State};
use axum::http::{header, Method, StatusCode, Uri};
use axum::middleware;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post, put};
use axum::{Json, Router};
use happier_core::criteria::{DockingResult, ImpactAssessment, LayerStatus, ProteinRef};
use happier_core::graph::{CriteriaLayer, EdgeColor, NodeColor, ThicknessTier};
use happier_core::linkography::{self, AnalysisParams, DesignMove, LabelOptions, LinkographyReport};
use happier_core::session::{EventAction, SessionEvent};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{ApiError, ErrorCode};
use crate::openapi;
use crate::state::{AppState, NewSession};
use crate::views::{self, BookmarksView, SubgraphView};

pub const BODY_LIMIT: usize = 5 * 1024 * 1024;

/// Every (method, path) the router serves; the /spec document is checked
/// against this list.
pub const ROUTES: &[(&str, &str)] = &[
    ("POST", "/sessions"),
    ("GET", "/sessions/{id}"),
    ("GET", "/sessions/{id}/subgraphs/{n}"),
    ("GET", "/sessions/{id}/ppi/{target}"),
    ("GET", "/sessions/{id}/bookmarks"),
    ("PUT", "/sessions/{id}/bookmarks/{target}"),
    ("DELETE", "/sessions/{id}/bookmarks/{target}"),
    ("GET", "/sessions/{id}/events"),
    ("POST", "/sessions/{id}/events"),
    ("POST", "/analysis/linkograph"),
    ("GET", "/spec"),
];

pub fn router(state: AppState) -> Router {
    Router::new()
        .route("/sessions", post(create_session))
        .route("/sessions/{id}", get(session_summary))
        .route("/sessions/{id}/subgraphs/{n}", get(subgraph))
        .route("/sessions/{id}/ppi/{target}", get(ppi_detail))
        .route("/sessions/{id}/bookmarks", get(list_bookmarks))
        .route("/sessions/{id}/bookmarks/{target}", put(add_bookmark).delete(remove_bookmark))
        .route("/sessions/{id}/events", get(list_events).post(append_event))
        .route("/analysis/linkograph", post(linkograph))
        .route("/spec", get(spec))
        .fallback(no_route)
        .layer(middleware::map_response(normalize_errors))
        .layer(DefaultBodyLimit::max(BODY_LIMIT))
        .with_state(state)
}

/// JSON body extractor whose rejections are `ApiError`s.
pub struct ApiJson<T>(pub T);

impl<S: Send + Sync, T: DeserializeOwned> FromRequest<S> for ApiJson<T> {
    type Rejection = ApiError;

    async fn from_request(req: Request, state: &S) -> Result<Self, Self::Rejection> {
        match Json::<T>::from_request(req, state).await {
            Ok(Json(v)) => Ok(Self(v)),
            Err(rejection) => Err(ApiError::invalid(rejection.body_text())),
        }
    }
}

async fn no_route(method: Method, uri: Uri) -> ApiError {
    ApiError::not_found(format!("no route for {method} {}", uri.path()))
}

/// Framework-generated errors (bad path segments, 405, oversized bodies)
/// arrive as plain text; rewrite them into `ApiError` bodies with one of the
/// five stable statuses.
async fn normalize_errors(resp: Response) -> Response {
    let status = resp.status();
    if status.is_success() || status.is_informational() || status.is_redirection() {
        return resp;
    }
    let is_json = resp
        .headers()
        .get(header::CONTENT_TYPE)
        .and_then(|v| v.to_str().ok())
        .is_some_and(|v| v.starts_with("application/json"));
    if is_json {
        return resp;
    }
    let text = axum::body::to_bytes(resp.into_body(), 64 * 1024)
        .await
        .map(|b| String::from_utf8_lossy(&b).trim().to_string())
        .unwrap_or_default();
    let code = match status {
        StatusCode::NOT_FOUND | StatusCode::METHOD_NOT_ALLOWED => ErrorCode::NotFound,
        StatusCode::CONFLICT => ErrorCode::Conflict,
        StatusCode::BAD_GATEWAY | StatusCode::GATEWAY_TIMEOUT => ErrorCode::ProviderUnavailable,
        s if s.is_client_error() => ErrorCode::InvalidInput,
        _ => ErrorCode::Internal,
    };
    let message = if text.is_empty() {
        status.canonical_reason().unwrap_or("error").to_string()
    } else {
        text
    };
    ApiError::new(code, message)
        .with_detail(serde_json::json!({ "http_status": status.as_u16() }))
        .into_response()
}

async fn spec() -> Json<serde_json::Value> {
    Json(openapi::document())
}

#[derive(Serialize, Deserialize)]
pub struct Created {
    pub session_id: String,
}

async fn create_session(State(state): State<AppState>, req: Request<Body>) -> Result<Response, ApiError> {
    let is_multipart = req
        .headers()
        .get(header::CONTENT_TYPE)
        .and_then(|v| v.to_str().ok())
        .is_some_and(|v| v.starts_with("multipart/form-data"));
    let input = if is_multipart {
        let mut mp = Multipart::from_request(req, &state)
            .await
            .map_err(|e| ApiError::invalid(e.body_text()))?;
        let mut fields = HashMap::new();
        while let Some(field) = mp.next_field().await.map_err(|e| ApiError::invalid(e.body_text()))? {
            let name = field.name().unwrap_or_default().to_string();
            let value = field.text().await.map_err(|e| ApiError::invalid(e.body_text()))?;
            fields.insert(name, value);
        }
        let mut take = |name: &str| {
            fields
                .remove(name)
                .ok_or_else(|| ApiError::invalid(format!("missing field `{name}`")).with_detail(serde_json::json!({ "field": name })))
        };
        NewSession {
            center_symbol: take("center_symbol")?,
            pdb: take("pdb")?,
            impact_text: take("impact_text")?,
            sdf: take("sdf")?,
        }
    } else {
        let ApiJson(input) = ApiJson::<NewSession>::from_request(req, &state).await?;
        input
    };
    let session_id = state.create_session(&input)?;
    Ok((StatusCode::CREATED, Json(Created { session_id })).into_response())
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SessionSummary {
    pub session_id: String,
    pub created_at: String,
    pub center: ProteinRef,
    pub impact_text: String,
    pub protein: StructureSummary,
    pub ligand: StructureSummary,
    pub neighbor_count: usize,
    pub subgraph_count: usize,
    pub bookmarks: Vec<String>,
    pub event_count: usize,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct StructureSummary {
    pub name: String,
    pub atoms: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bonds: Option<usize>,
}

async fn session_summary(State(state): State<AppState>, Path(id): Path<String>) -> Result<Json<SessionSummary>, ApiError> {
    let entry = state.session(&id)?;
    let session = entry.session.lock().await;
    let st = session.state();
    Ok(Json(SessionSummary {
        session_id: st.session_id.clone(),
        created_at: st.created_at.to_rfc3339(),
        center: entry.center.clone(),
        impact_text: st.impact_text.clone(),
        protein: StructureSummary {
            name: st.protein.name.clone(),
            atoms: st.protein.atoms.len(),
            bonds: None,
        },
        ligand: StructureSummary {
            name: st.ligand.name.clone(),
            atoms: st.ligand.atoms.len(),
            bonds: Some(st.ligand.bonds.len()),
        },
        neighbor_count: entry.partition.member_count(),
        subgraph_count: entry.partition.len(),
        bookmarks: st.bookmarks.iter().cloned().collect(),
        event_count: st.events.len(),
    }))
}

fn parse_layers(raw: Option<&String>) -> Result<BTreeSet<CriteriaLayer>, ApiError> {
    let mut layers = BTreeSet::from([CriteriaLayer::C1]);
    for part in raw.map(|s| s.as_str()).unwrap_or("").split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let layer = CriteriaLayer::parse(part)
            .ok_or_else(|| ApiError::invalid(format!("unknown layer `{part}` (expected c1, c2 or c3)")))?;
        layers.insert(layer);
    }
    Ok(layers)
}

fn parse_flag(raw: Option<&String>) -> Result<bool, ApiError> {
    match raw.map(|s| s.trim().to_ascii_lowercase()).as_deref() {
        None | Some("") | Some("false") | Some("0") => Ok(false),
        Some("true") | Some("1") => Ok(true),
        Some(other) => Err(ApiError::invalid(format!("expected true or false, got `{other}`"))),
    }
}

async fn subgraph(
    State(state): State<AppState>,
    Path((id, n)): Path<(String, String)>,
    Query(q): Query<HashMap<String, String>>,
) -> Result<Json<SubgraphView>, ApiError> {
    let entry = state.session(&id)?;
    let n: usize = n
        .parse()
        .map_err(|_| ApiError::not_found(format!("subgraph `{n}` does not exist")))?;
    let layers = parse_layers(q.get("layers"))?;
    let refresh = parse_flag(q.get("refresh"))?;
    let ann = state.annotated(&entry, n, &layers, refresh).await?;
    Ok(Json(views::subgraph_view(
        state.store(),
        &id,
        entry.partition.len(),
        layers.into_iter().collect(),
        &ann,
    )))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PpiDetail {
    pub session_id: String,
    pub center: ProteinRef,
    pub target: ProteinRef,
    pub description: String,
    pub subgraph: usize,
    pub combined_score: u16,
    pub thickness_tier: ThicknessTier,
    pub impact_status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub impact_reason: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub assessment: Option<ImpactAssessment>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edge_color: Option<EdgeColor>,
    pub docking_status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub docking_reason: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub docking: Option<DockingResult>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub node_color: Option<NodeColor>,
    pub bookmarked: bool,
}

fn item_status<T>(item: &Option<T>, layer: &LayerStatus, warnings: &BTreeSet<String>, key: &str) -> (String, Option<String>) {
    if item.is_some() {
        return ("ready".into(), None);
    }
    match layer {
        LayerStatus::Pending => ("pending".into(), None),
        LayerStatus::Ready => ("failed".into(), Some("no result".into())),
        LayerStatus::Failed(reason) => {
            let specific = warnings.iter().find(|w| w.contains(key)).cloned();
            ("failed".into(), Some(specific.unwrap_or_else(|| reason.clone())))
        }
    }
}

async fn ppi_detail(
    State(state): State<AppState>,
    Path((id, target)): Path<(String, String)>,
) -> Result<Json<PpiDetail>, ApiError> {
    let entry = state.session(&id)?;
    let store = state.store();
    let idx = store
        .resolve(&target)
        .ok_or_else(|| ApiError::not_found(format!("unknown protein {target}")))?;
    let n = entry
        .partition
        .subgraph_of(idx)
        .ok_or_else(|| ApiError::not_found(format!("{target} is not in any subgraph of this session")))?;
    let all = BTreeSet::from(CriteriaLayer::ALL);
    let ann = state.annotated(&entry, n, &all, false).await?;
    let center = ann.subgraph.center;
    let edge = ann
        .edges
        .iter()
        .find(|e| (e.a == center && e.b == idx) || (e.b == center && e.a == idx))
        .ok_or_else(|| ApiError::internal("subgraph member without a center edge"))?;
    let node = ann
        .nodes
        .iter()
        .find(|n| !n.is_center && n.protein == idx)
        .ok_or_else(|| ApiError::internal("subgraph member without a node"))?;
    let protein = store.protein(idx);
    let (impact_status, impact_reason) =
        item_status(&edge.impact, ann.status(CriteriaLayer::C2), &ann.warnings, &protein.id);
    let (docking_status, docking_reason) =
        item_status(&node.docking, ann.status(CriteriaLayer::C3), &ann.warnings, &protein.id);
    let bookmarked = entry.session.lock().await.is_bookmarked(&protein.id);
    Ok(Json(PpiDetail {
        session_id: id,
        center: entry.center.clone(),
        target: ProteinRef::from_store(store, idx),
        description: protein.description.clone(),
        subgraph: n,
        combined_score: edge.combined_score,
        thickness_tier: edge.tier,
        impact_status,
        impact_reason,
        assessment: edge.impact.clone(),
        edge_color: edge.edge_color(),
        docking_status,
        docking_reason,
        docking: node.docking.clone(),
        node_color: node.node_color(),
        bookmarked,
    }))
}

fn parse_filter(raw: Option<&String>) -> Result<Option<Vec<usize>>, ApiError> {
    let Some(raw) = raw else { return Ok(None) };
    let mut out = BTreeSet::new();
    for part in raw.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let n: usize = part
            .parse()
            .ok()
            .filter(|n| *n >= 1)
            .ok_or_else(|| ApiError::invalid(format!("bad subgraph index `{part}`")))?;
        out.insert(n);
    }
    Ok(Some(out.into_iter().collect()))
}

async fn list_bookmarks(
    State(state): State<AppState>,
    Path(id): Path<String>,
    Query(q): Query<HashMap<String, String>>,
) -> Result<Json<BookmarksView>, ApiError> {
    let entry = state.session(&id)?;
    let filter = parse_filter(q.get("subgraphs"))?;
    let set = filter.as_ref().map(|f| f.iter().copied().collect::<BTreeSet<_>>());
    let (view, bookmarks) = state.bookmark_view(&entry, set.as_ref()).await?;
    Ok(Json(views::bookmarks_view(
        state.store(),
        &id,
        filter,
        bookmarks.into_iter().collect(),
        &view,
    )))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BookmarkChange {
    pub target: ProteinRef,
    pub bookmarked: bool,
    pub changed: bool,
}

async fn set_bookmark(state: AppState, id: String, target: String, present: bool) -> Result<Json<BookmarkChange>, ApiError> {
    let entry = state.session(&id)?;
    let store = state.store();
    let changed = entry.session.lock().await.set_bookmark(store, &target, present)?;
    let idx = store.resolve(&target).expect("set_bookmark resolved it");
    Ok(Json(BookmarkChange {
        target: ProteinRef::from_store(store, idx),
        bookmarked: present,
        changed,
    }))
}

async fn add_bookmark(
    State(state): State<AppState>,
    Path((id, target)): Path<(String, String)>,
) -> Result<Json<BookmarkChange>, ApiError> {
    set_bookmark(state, id, target, true).await
}

async fn remove_bookmark(
    State(state): State<AppState>,
    Path((id, target)): Path<(String, String)>,
) -> Result<Json<BookmarkChange>, ApiError> {
    set_bookmark(state, id, target, false).await
}

/// A session event as submitted by a client; the server assigns seq and ts.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EventBody {
    #[serde(flatten)]
    pub action: EventAction,
    #[serde(default)]
    pub text: Option<String>,
}

async fn append_event(
    State(state): State<AppState>,
    Path(id): Path<String>,
    ApiJson(body): ApiJson<EventBody>,
) -> Result<Response, ApiError> {
    let entry = state.session(&id)?;
    let mut session = entry.session.lock().await;
    let event = session.record(state.store(), body.action, body.text)?.clone();
    Ok((StatusCode::CREATED, Json(event)).into_response())
}

async fn list_events(State(state): State<AppState>, Path(id): Path<String>) -> Result<Json<Vec<SessionEvent>>, ApiError> {
    let entry = state.session(&id)?;
    let events = entry.session.lock().await.state().events.clone();
    Ok(Json(events))
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct LinkographyRequest {
    #[serde(default)]
    pub moves: Option<Vec<String>>,
    #[serde(default)]
    pub session_id: Option<String>,
    #[serde(default)]
    pub threshold: Option<f64>,
    #[serde(default)]
    pub k_fraction: Option<f64>,
    #[serde(default)]
    pub submitted_ppis: Vec<String>,
    #[serde(default)]
    pub center_symbol: Option<String>,
    #[serde(default)]
    pub confidence: BTreeMap<String, f64>,
    #[serde(default)]
    pub require_center: bool,
}

async fn linkograph(
    State(state): State<AppState>,
    ApiJson(req): ApiJson<LinkographyRequest>,
) -> Result<Json<LinkographyReport>, ApiError> {
    let (moves, default_center) = match (req.moves, req.session_id) {
        (Some(texts), None) => {
            let moves: Vec<DesignMove> = texts
                .iter()
                .map(|t| t.trim())
                .filter(|t| !t.is_empty())
                .enumerate()
                .map(|(i, t)| DesignMove {
                    index: i + 1,
                    text: t.to_string(),
                })
                .collect();
            (moves, String::new())
        }
        (None, Some(session_id)) => {
            let entry = state.session(&session_id)?;
            let events = entry.session.lock().await.state().events.clone();
            let store = state.store();
            let symbol_of = |id: &str| store.by_id(id).map_or_else(|| id.to_string(), |p| p.symbol.clone());
            (linkography::moves_from_events(&events, &symbol_of), entry.center.symbol.clone())
        }
        _ => return Err(ApiError::invalid("give exactly one of `moves` or `session_id`")),
    };
    if moves.is_empty() {
        return Err(ApiError::invalid("no design moves to analyze"));
    }
    let params = AnalysisParams {
        threshold: req.threshold.unwrap_or(linkography::DEFAULT_THRESHOLD),
        k_fraction: req.k_fraction.unwrap_or(linkography::DEFAULT_K_FRACTION),
        center_symbol: req.center_symbol.unwrap_or(default_center),
        options: LabelOptions {
            require_center: req.require_center,
        },
    };
    linkography::check_parameters(params.threshold, params.k_fraction)?;
    let (submitted, confidence) = (req.submitted_ppis, req.confidence);
    let report = state
        .analyze_blocking(move |embedder| linkography::analyze(embedder, &moves, &params, &submitted, &confidence))
        .await??;
    Ok(Json(report))
}
