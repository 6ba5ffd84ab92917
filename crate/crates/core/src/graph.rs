//! Center-rooted subgraph partitioning and the legend encodings (edge
//! thickness, edge color, node color).

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ingest::{Interaction, InteractionStore, ProteinIdx};

pub const DEFAULT_CHUNK_TARGET: usize = 55;
pub const MIN_CHUNK_TARGET: usize = 50;
pub const MAX_CHUNK_TARGET: usize = 60;

/// Upper bounds (inclusive) of the thin and medium combined-score bins.
pub const THIN_MAX: i64 = 333;
pub const MEDIUM_MAX: i64 = 666;

/// Affinity cut points; both boundaries belong to the orange band.
pub const PURPLE_ABOVE: f64 = -0.5;
pub const ORANGE_DOWN_TO: f64 = -2.0;
pub const AFFINITY_MIN: f64 = -15.0;
pub const AFFINITY_MAX: f64 = 0.0;
pub const PATHWAY_SCORE_MAX: f64 = 100.0;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    #[error("unknown protein {0}")]
    UnknownProtein(String),
    #[error("protein {0} has no interaction partners")]
    NoNeighbors(String),
    #[error("chunk target {0} outside 50..=60")]
    InvalidChunkTarget(usize),
    #[error("combined score {0} outside [0,1000]")]
    ScoreOutOfRange(i64),
    #[error("affinity {0} outside [-15,0]")]
    AffinityOutOfRange(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ThicknessTier {
    Thin,
    Medium,
    Thick,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeColor {
    Gray,
    Red,
}

/// Ordered from weakest to strongest docking potential.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeColor {
    Pink,
    Orange,
    Purple,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CriteriaLayer {
    C1,
    C2,
    C3,
}

impl CriteriaLayer {
    pub const ALL: [CriteriaLayer; 3] = [CriteriaLayer::C1, CriteriaLayer::C2, CriteriaLayer::C3];

    pub fn parse(s: &str) -> Option<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "c1" => Some(Self::C1),
            "c2" => Some(Self::C2),
            "c3" => Some(Self::C3),
            _ => None,
        }
    }
}

impl std::fmt::Display for CriteriaLayer {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::C1 => "C1",
            Self::C2 => "C2",
            Self::C3 => "C3",
        })
    }
}

pub fn thickness_tier(combined_score: i64) -> Result<ThicknessTier, GraphError> {
    if !(0..=1000).contains(&combined_score) {
        Err(GraphError::ScoreOutOfRange(combined_score))
    } else if combined_score <= THIN_MAX {
        Ok(ThicknessTier::Thin)
    } else if combined_score <= MEDIUM_MAX {
        Ok(ThicknessTier::Medium)
    } else {
        Ok(ThicknessTier::Thick)
    }
}

/// Red iff the pathway score is strictly above zero.
pub fn edge_color(pathway_score: f64) -> EdgeColor {
    if pathway_score > 0.0 {
        EdgeColor::Red
    } else {
        EdgeColor::Gray
    }
}

pub fn node_color(affinity: f64) -> Result<NodeColor, GraphError> {
    if !(AFFINITY_MIN..=AFFINITY_MAX).contains(&affinity) {
        return Err(GraphError::AffinityOutOfRange(affinity));
    }
    Ok(if affinity > PURPLE_ABOVE {
        NodeColor::Purple
    } else if affinity >= ORANGE_DOWN_TO {
        NodeColor::Orange
    } else {
        NodeColor::Pink
    })
}

/// One view: the center plus a slice of its ranked neighbors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgraph {
    /// 1-based position in the ranking.
    pub index: usize,
    pub center: ProteinIdx,
    /// Ranked members with the score of their edge to the center.
    pub members: Vec<(ProteinIdx, u16)>,
    /// Center–member edges in member order, then member–member edges.
    pub edges: Vec<Interaction>,
}

impl Subgraph {
    pub fn member_ids(&self) -> impl Iterator<Item = ProteinIdx> + '_ {
        self.members.iter().map(|(m, _)| *m)
    }

    pub fn contains(&self, idx: ProteinIdx) -> bool {
        self.members.iter().any(|(m, _)| *m == idx)
    }

    pub fn min_score(&self) -> Option<u16> {
        self.members.iter().map(|(_, s)| *s).min()
    }

    pub fn max_score(&self) -> Option<u16> {
        self.members.iter().map(|(_, s)| *s).max()
    }
}

/// All subgraphs of one center, with a member → subgraph lookup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    pub center: ProteinIdx,
    pub subgraphs: Vec<Subgraph>,
    membership: HashMap<ProteinIdx, usize>,
}

impl Partition {
    pub fn len(&self) -> usize {
        self.subgraphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgraphs.is_empty()
    }

    /// 1-based access.
    pub fn get(&self, index: usize) -> Option<&Subgraph> {
        index.checked_sub(1).and_then(|i| self.subgraphs.get(i))
    }

    /// 1-based index of the subgraph holding `member`.
    pub fn subgraph_of(&self, member: ProteinIdx) -> Option<usize> {
        self.membership.get(&member).copied()
    }

    /// Number of neighbors spread over the subgraphs.
    pub fn member_count(&self) -> usize {
        self.membership.len()
    }
}

/// Chunk the ranked neighborhood of `center` into consecutive subgraphs of
/// `chunk_target` members; the last one keeps the remainder.
pub fn partition(store: &InteractionStore, center: &str, chunk_target: usize) -> Result<Partition, GraphError> {
    if !(MIN_CHUNK_TARGET..=MAX_CHUNK_TARGET).contains(&chunk_target) {
        return Err(GraphError::InvalidChunkTarget(chunk_target));
    }
    let center_idx = store
        .index_of(center)
        .ok_or_else(|| GraphError::UnknownProtein(center.to_string()))?;
    let ranked = store.neighbor_indices(center_idx);
    if ranked.is_empty() {
        return Err(GraphError::NoNeighbors(center.to_string()));
    }

    let mut subgraphs = Vec::with_capacity(ranked.len().div_ceil(chunk_target));
    let mut membership = HashMap::with_capacity(ranked.len());
    for (i, chunk) in ranked.chunks(chunk_target).enumerate() {
        let index = i + 1;
        let position: HashMap<ProteinIdx, usize> = chunk.iter().enumerate().map(|(p, (m, _))| (*m, p)).collect();
        let mut edges: Vec<Interaction> = chunk
            .iter()
            .map(|&(m, s)| canonical(center_idx, m, s))
            .collect();
        let mut inner = Vec::new();
        for (p, &(m, _)) in chunk.iter().enumerate() {
            for &(n, s) in store.adjacency(m) {
                if let Some(&q) = position.get(&n) {
                    if p < q {
                        inner.push((p, q, canonical(m, n, s)));
                    }
                }
            }
        }
        inner.sort_by_key(|(p, q, _)| (*p, *q));
        edges.extend(inner.into_iter().map(|(_, _, e)| e));
        for &(m, _) in chunk {
            membership.insert(m, index);
        }
        subgraphs.push(Subgraph {
            index,
            center: center_idx,
            members: chunk.to_vec(),
            edges,
        });
    }
    Ok(Partition {
        center: center_idx,
        subgraphs,
        membership,
    })
}

fn canonical(x: ProteinIdx, y: ProteinIdx, combined_score: u16) -> Interaction {
    let (a, b) = if x < y { (x, y) } else { (y, x) };
    Interaction { a, b, combined_score }
}
