//! JSON shapes served to clients. Every legend encoding is computed here so
//! clients never derive tiers or colors themselves.

use std::collections::BTreeMap;

use happier_core::criteria::{AnnotatedEdge, AnnotatedNode, AnnotatedSubgraph, LayerStatus, ProteinRef};
use happier_core::graph::{CriteriaLayer, EdgeColor, NodeColor, ThicknessTier};
use happier_core::ingest::{InteractionStore, ProteinIdx};
use happier_core::session::BookmarkView;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodeView {
    pub id: String,
    pub symbol: String,
    pub role: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subgraph: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub affinity: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub node_color: Option<NodeColor>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeView {
    pub source: String,
    pub target: String,
    pub source_symbol: String,
    pub target_symbol: String,
    pub combined_score: u16,
    pub thickness_tier: ThicknessTier,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pathway_score: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edge_color: Option<EdgeColor>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubgraphView {
    pub session_id: String,
    pub index: usize,
    pub subgraph_count: usize,
    pub center: ProteinRef,
    pub layers: Vec<CriteriaLayer>,
    pub layer_status: BTreeMap<CriteriaLayer, LayerStatus>,
    pub nodes: Vec<NodeView>,
    pub edges: Vec<EdgeView>,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BookmarksView {
    pub session_id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub filter: Option<Vec<usize>>,
    /// Bookmarks in the view (center excluded).
    pub count: usize,
    /// All bookmarked target ids, regardless of filter.
    pub bookmarks: Vec<String>,
    pub nodes: Vec<NodeView>,
    pub edges: Vec<EdgeView>,
}

pub fn node_view(store: &InteractionStore, n: &AnnotatedNode, subgraph: Option<usize>) -> NodeView {
    let p = store.protein(n.protein);
    NodeView {
        id: p.id.clone(),
        symbol: p.symbol.clone(),
        role: if n.is_center { "center" } else { "member" }.to_string(),
        subgraph,
        affinity: n.docking.as_ref().map(|d| d.affinity),
        node_color: n.node_color(),
    }
}

pub fn edge_view(store: &InteractionStore, e: &AnnotatedEdge) -> EdgeView {
    let (a, b) = (store.protein(e.a), store.protein(e.b));
    EdgeView {
        source: a.id.clone(),
        target: b.id.clone(),
        source_symbol: a.symbol.clone(),
        target_symbol: b.symbol.clone(),
        combined_score: e.combined_score,
        thickness_tier: e.tier,
        pathway_score: e.impact.as_ref().map(|i| i.score),
        edge_color: e.edge_color(),
    }
}

pub fn subgraph_view(
    store: &InteractionStore,
    session_id: &str,
    subgraph_count: usize,
    layers: Vec<CriteriaLayer>,
    ann: &AnnotatedSubgraph,
) -> SubgraphView {
    SubgraphView {
        session_id: session_id.to_string(),
        index: ann.subgraph.index,
        subgraph_count,
        center: ProteinRef::from_store(store, ann.subgraph.center),
        layers,
        layer_status: ann.layer_status.clone(),
        nodes: ann.nodes.iter().map(|n| node_view(store, n, None)).collect(),
        edges: ann.edges.iter().map(|e| edge_view(store, e)).collect(),
        warnings: ann.warnings.iter().cloned().collect(),
    }
}

pub fn bookmarks_view(
    store: &InteractionStore,
    session_id: &str,
    filter: Option<Vec<usize>>,
    bookmarks: Vec<String>,
    view: &BookmarkView,
) -> BookmarksView {
    let sub = |i: ProteinIdx| view.subgraph_of.get(&i).copied();
    BookmarksView {
        session_id: session_id.to_string(),
        filter,
        count: view.nodes.len() - 1,
        bookmarks,
        nodes: view.nodes.iter().map(|n| node_view(store, n, sub(n.protein))).collect(),
        edges: view.edges.iter().map(|e| edge_view(store, e)).collect(),
    }
}
