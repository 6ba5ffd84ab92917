//! Therapeutic-impact (C2) and docking (C3) provider contracts, the offline
//! providers, and merging provider output onto a subgraph.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fs;
use std::io;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::chem::LigandStructure;
use crate::graph::{
    edge_color, node_color, thickness_tier, CriteriaLayer, EdgeColor, NodeColor, Subgraph, ThicknessTier,
    AFFINITY_MAX, AFFINITY_MIN, PATHWAY_SCORE_MAX,
};
use crate::ingest::{InteractionStore, ProteinIdx};
use crate::text;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CriteriaError {
    #[error("provider unavailable: {0}")]
    ProviderUnavailable(String),
    #[error("unknown protein {0}")]
    UnknownProtein(String),
    #[error("provider returned affinity {affinity} for {protein}, outside [-15,0]")]
    AffinityOutOfRange { protein: String, affinity: f64 },
    #[error("provider broke its contract: {0}")]
    ProviderContract(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProteinRef {
    pub id: String,
    pub symbol: String,
}

impl ProteinRef {
    pub fn from_store(store: &InteractionStore, idx: ProteinIdx) -> Self {
        let p = store.protein(idx);
        Self {
            id: p.id.clone(),
            symbol: p.symbol.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Reference {
    pub title: String,
    pub identifier: String,
    pub excerpt: String,
}

/// Relevance of the pathway `target → center` to the desired impact.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ImpactAssessment {
    pub target: String,
    pub center: String,
    pub score: f64,
    pub explanation: String,
    pub references: Vec<Reference>,
}

impl ImpactAssessment {
    fn check(&self) -> Result<(), String> {
        if !(0.0..=PATHWAY_SCORE_MAX).contains(&self.score) {
            return Err(format!("score {} for {} outside [0,100]", self.score, self.target));
        }
        if self.score > 0.0 && self.explanation.trim().is_empty() {
            return Err(format!("empty explanation for positive score of {}", self.target));
        }
        if self.score > 0.0 && self.references.is_empty() {
            return Err(format!("no references for positive score of {}", self.target));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Pose {
    pub pose_id: u32,
    pub confidence: f64,
    pub coordinates: Vec<[f64; 3]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DockingResult {
    pub protein: String,
    pub affinity: f64,
    pub poses: Vec<Pose>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ImpactRequest {
    pub center: ProteinRef,
    pub impact_text: String,
    pub candidates: Vec<ProteinRef>,
}

/// Provider output: assessed candidates plus candidate id → failure reason
/// for the ones it could not score (e.g. a timed-out subset).
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ImpactBatch {
    pub assessments: Vec<ImpactAssessment>,
    #[serde(default)]
    pub failed: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct DockingBatch {
    pub results: Vec<DockingResult>,
    #[serde(default)]
    pub failed: BTreeMap<String, String>,
}

pub trait ImpactProvider: Send + Sync {
    /// Stable identifier, part of every cache key.
    fn id(&self) -> &str;
    fn assess(&self, request: &ImpactRequest) -> Result<ImpactBatch, CriteriaError>;
}

pub trait DockingProvider: Send + Sync {
    fn id(&self) -> &str;
    fn dock(&self, ligand: &LigandStructure, proteins: &[ProteinRef]) -> Result<DockingBatch, CriteriaError>;
}

/// Run one impact batch and hold the provider to its contract: one outcome
/// per candidate, in candidate order, scores in range.
pub fn assess_impact(
    provider: &dyn ImpactProvider,
    center: &ProteinRef,
    impact_text: &str,
    candidates: &[ProteinRef],
) -> Result<ImpactBatch, CriteriaError> {
    if impact_text.trim().is_empty() {
        return Err(CriteriaError::InvalidInput("impact text is empty".into()));
    }
    if candidates.is_empty() {
        return Err(CriteriaError::InvalidInput("no candidates".into()));
    }
    let request = ImpactRequest {
        center: center.clone(),
        impact_text: impact_text.to_string(),
        candidates: candidates.to_vec(),
    };
    let raw = provider.assess(&request)?;

    let wanted: HashSet<&str> = candidates.iter().map(|c| c.id.as_str()).collect();
    let mut by_target: HashMap<String, ImpactAssessment> = HashMap::new();
    for a in raw.assessments {
        if !wanted.contains(a.target.as_str()) {
            return Err(CriteriaError::UnknownProtein(a.target));
        }
        if a.center != center.id {
            return Err(CriteriaError::ProviderContract(format!(
                "assessment for {} names center {}",
                a.target, a.center
            )));
        }
        a.check().map_err(CriteriaError::ProviderContract)?;
        if by_target.insert(a.target.clone(), a).is_some() {
            return Err(CriteriaError::ProviderContract("duplicate assessment".into()));
        }
    }

    let mut batch = ImpactBatch::default();
    for c in candidates {
        match by_target.remove(&c.id) {
            Some(a) => batch.assessments.push(a),
            None => {
                let reason = raw
                    .failed
                    .get(&c.id)
                    .cloned()
                    .unwrap_or_else(|| "no result from provider".to_string());
                batch.failed.insert(c.id.clone(), reason);
            }
        }
    }
    Ok(batch)
}

/// Run one docking batch. Out-of-range affinities are rejected, never
/// clamped; poses come back sorted by descending confidence.
pub fn dock(
    provider: &dyn DockingProvider,
    ligand: &LigandStructure,
    proteins: &[ProteinRef],
) -> Result<DockingBatch, CriteriaError> {
    if proteins.is_empty() {
        return Err(CriteriaError::InvalidInput("no proteins".into()));
    }
    let raw = provider.dock(ligand, proteins)?;
    let wanted: HashSet<&str> = proteins.iter().map(|p| p.id.as_str()).collect();
    let mut by_protein: HashMap<String, DockingResult> = HashMap::new();
    for mut r in raw.results {
        if !wanted.contains(r.protein.as_str()) {
            return Err(CriteriaError::UnknownProtein(r.protein));
        }
        if !(AFFINITY_MIN..=AFFINITY_MAX).contains(&r.affinity) {
            return Err(CriteriaError::AffinityOutOfRange {
                protein: r.protein,
                affinity: r.affinity,
            });
        }
        for pose in &r.poses {
            if !(0.0..=1.0).contains(&pose.confidence) {
                return Err(CriteriaError::ProviderContract(format!(
                    "pose {} of {} has confidence {}",
                    pose.pose_id, r.protein, pose.confidence
                )));
            }
            if pose.coordinates.len() != ligand.atoms.len() {
                return Err(CriteriaError::ProviderContract(format!(
                    "pose {} of {} has {} coordinates for {} ligand atoms",
                    pose.pose_id,
                    r.protein,
                    pose.coordinates.len(),
                    ligand.atoms.len()
                )));
            }
        }
        r.poses.sort_by(|a, b| b.confidence.total_cmp(&a.confidence));
        if by_protein.insert(r.protein.clone(), r).is_some() {
            return Err(CriteriaError::ProviderContract("duplicate docking result".into()));
        }
    }
    let mut batch = DockingBatch::default();
    for p in proteins {
        match by_protein.remove(&p.id) {
            Some(r) => batch.results.push(r),
            None => {
                let reason = raw
                    .failed
                    .get(&p.id)
                    .cloned()
                    .unwrap_or_else(|| "no result from provider".to_string());
                batch.failed.insert(p.id.clone(), reason);
            }
        }
    }
    Ok(batch)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Document {
    pub identifier: String,
    pub title: String,
    pub sentences: Vec<String>,
}

/// Plain-text literature corpus: one document per file, first line is the
/// title.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Corpus {
    pub documents: Vec<Document>,
}

impl Corpus {
    pub fn from_texts<I, S, T>(docs: I) -> Self
    where
        I: IntoIterator<Item = (S, T)>,
        S: Into<String>,
        T: AsRef<str>,
    {
        let documents = docs
            .into_iter()
            .map(|(identifier, body)| {
                let body = body.as_ref();
                let (title, rest) = body.split_once('\n').unwrap_or((body, ""));
                Document {
                    identifier: identifier.into(),
                    title: title.trim().to_string(),
                    sentences: text::sentences(rest),
                }
            })
            .collect();
        Self { documents }
    }

    /// Reads every non-hidden regular file of `dir` in file-name order.
    pub fn load(dir: &Path) -> io::Result<Self> {
        let mut entries: Vec<_> = fs::read_dir(dir)?
            .collect::<io::Result<Vec<_>>>()?
            .into_iter()
            .filter(|e| e.file_type().map(|t| t.is_file()).unwrap_or(false))
            .filter(|e| !e.file_name().to_string_lossy().starts_with('.'))
            .collect();
        entries.sort_by_key(|e| e.file_name());
        let mut docs = Vec::with_capacity(entries.len());
        for e in entries {
            docs.push((e.file_name().to_string_lossy().into_owned(), fs::read_to_string(e.path())?));
        }
        Ok(Self::from_texts(docs))
    }
}

const STOPWORDS: &[&str] = &[
    "a", "an", "and", "are", "as", "at", "be", "by", "for", "from", "in", "into", "is", "it", "its", "of", "on",
    "or", "that", "the", "this", "to", "via", "with",
];

/// Deterministic literature matcher standing in for a retrieval model.
///
/// A sentence supports a candidate when it mentions the candidate symbol as a
/// whole token and contains at least one content term of the impact text as
/// a case-insensitive substring (so "phosphorylate" matches
/// "phosphorylates"). Content terms are the impact tokens minus stopwords and
/// minus the center symbol, unless that leaves nothing. The score is
/// `100 * matched / max_matched` over the batch, 0 when nothing matches.
#[derive(Debug, Clone)]
pub struct OfflineImpactProvider {
    corpus: Corpus,
}

impl OfflineImpactProvider {
    pub fn new(corpus: Corpus) -> Self {
        Self { corpus }
    }

    pub fn content_terms(impact_text: &str, center_symbol: &str) -> Vec<String> {
        let center = text::tokens(center_symbol);
        let mut all: Vec<String> = text::tokens(impact_text)
            .into_iter()
            .filter(|t| !STOPWORDS.contains(&t.as_str()))
            .collect();
        all.dedup();
        let without_center: Vec<String> = all.iter().filter(|t| !center.contains(t)).cloned().collect();
        if without_center.is_empty() {
            all
        } else {
            without_center
        }
    }
}

impl ImpactProvider for OfflineImpactProvider {
    fn id(&self) -> &str {
        "offline-literature"
    }

    fn assess(&self, request: &ImpactRequest) -> Result<ImpactBatch, CriteriaError> {
        let terms = Self::content_terms(&request.impact_text, &request.center.symbol);
        let sentence_tokens: Vec<Vec<Vec<String>>> = self
            .corpus
            .documents
            .iter()
            .map(|d| d.sentences.iter().map(|s| text::tokens(s)).collect())
            .collect();

        let matches: Vec<Vec<Reference>> = request
            .candidates
            .iter()
            .map(|c| {
                let mut refs = Vec::new();
                for (d, doc) in self.corpus.documents.iter().enumerate() {
                    for (s, sentence) in doc.sentences.iter().enumerate() {
                        if !text::mentions(&sentence_tokens[d][s], &c.symbol) {
                            continue;
                        }
                        let lower = sentence.to_lowercase();
                        if terms.iter().any(|t| lower.contains(t.as_str())) {
                            refs.push(Reference {
                                title: doc.title.clone(),
                                identifier: format!("{}#s{}", doc.identifier, s + 1),
                                excerpt: sentence.clone(),
                            });
                        }
                    }
                }
                refs
            })
            .collect();

        let max = matches.iter().map(Vec::len).max().unwrap_or(0);
        let assessments = request
            .candidates
            .iter()
            .zip(matches)
            .map(|(c, refs)| {
                let score = if max == 0 {
                    0.0
                } else {
                    PATHWAY_SCORE_MAX * refs.len() as f64 / max as f64
                };
                let explanation = if refs.is_empty() {
                    format!(
                        "No corpus sentence mentions {} together with the impact terms ({}).",
                        c.symbol,
                        terms.join(", ")
                    )
                } else {
                    format!(
                        "{} corpus sentence(s) mention {} together with the impact terms ({}); the best-supported candidate in this batch has {}.",
                        refs.len(),
                        c.symbol,
                        terms.join(", "),
                        max
                    )
                };
                ImpactAssessment {
                    target: c.id.clone(),
                    center: request.center.id.clone(),
                    score,
                    explanation,
                    references: refs,
                }
            })
            .collect();
        Ok(ImpactBatch {
            assessments,
            failed: BTreeMap::new(),
        })
    }
}

/// `protein<TAB>affinity` table keyed by case-insensitive symbol or id.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct AffinityTable {
    rows: BTreeMap<String, f64>,
}

impl AffinityTable {
    pub fn parse(content: &str) -> Result<Self, CriteriaError> {
        let mut lines = content.lines().enumerate();
        let header = lines.next().map(|(_, l)| l).unwrap_or("");
        let cols: Vec<&str> = header.split('\t').map(str::trim).collect();
        if cols.len() < 2 || cols[0] != "protein" || cols[1] != "affinity" {
            return Err(CriteriaError::InvalidInput(
                "affinity table header must be protein<TAB>affinity".into(),
            ));
        }
        let mut rows = BTreeMap::new();
        for (i, line) in lines {
            if line.trim().is_empty() {
                continue;
            }
            let mut f = line.split('\t');
            let (Some(p), Some(v)) = (f.next(), f.next()) else {
                return Err(CriteriaError::InvalidInput(format!("affinity table line {}", i + 1)));
            };
            let v: f64 = v
                .trim()
                .parse()
                .map_err(|_| CriteriaError::InvalidInput(format!("affinity table line {}", i + 1)))?;
            rows.insert(p.trim().to_lowercase(), v);
        }
        Ok(Self { rows })
    }

    pub fn load(path: &Path) -> Result<Self, CriteriaError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CriteriaError::InvalidInput(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn get(&self, protein: &ProteinRef) -> Option<f64> {
        self.rows
            .get(&protein.symbol.to_lowercase())
            .or_else(|| self.rows.get(&protein.id.to_lowercase()))
            .copied()
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

/// Table-backed docking stub. Pose `p` (0-based) is the ligand rigidly
/// translated by `p * (1.5, -1.0, 0.5)` Å with confidence `1 / (p + 1)`.
#[derive(Debug, Clone)]
pub struct OfflineDockingProvider {
    table: AffinityTable,
    pose_count: u32,
}

pub const POSE_STEP: [f64; 3] = [1.5, -1.0, 0.5];

impl OfflineDockingProvider {
    pub fn new(table: AffinityTable) -> Self {
        Self { table, pose_count: 3 }
    }

    pub fn with_pose_count(mut self, n: u32) -> Self {
        self.pose_count = n;
        self
    }

    fn poses(&self, ligand: &LigandStructure) -> Vec<Pose> {
        let base = ligand.coordinates();
        (0..self.pose_count)
            .map(|p| {
                let shift = POSE_STEP.map(|s| s * p as f64);
                Pose {
                    pose_id: p,
                    confidence: 1.0 / (p as f64 + 1.0),
                    coordinates: base
                        .iter()
                        .map(|c| [c[0] + shift[0], c[1] + shift[1], c[2] + shift[2]])
                        .collect(),
                }
            })
            .collect()
    }
}

impl DockingProvider for OfflineDockingProvider {
    fn id(&self) -> &str {
        "offline-affinity-table"
    }

    fn dock(&self, ligand: &LigandStructure, proteins: &[ProteinRef]) -> Result<DockingBatch, CriteriaError> {
        let mut batch = DockingBatch::default();
        for p in proteins {
            match self.table.get(p) {
                Some(affinity) => batch.results.push(DockingResult {
                    protein: p.id.clone(),
                    affinity,
                    poses: self.poses(ligand),
                }),
                None => {
                    batch.failed.insert(p.id.clone(), format!("no affinity row for {}", p.symbol));
                }
            }
        }
        Ok(batch)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "reason", rename_all = "lowercase")]
pub enum LayerStatus {
    Ready,
    Pending,
    Failed(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnnotatedEdge {
    pub a: ProteinIdx,
    pub b: ProteinIdx,
    pub combined_score: u16,
    pub tier: ThicknessTier,
    /// Only center–member edges carry a pathway assessment.
    pub impact: Option<ImpactAssessment>,
}

impl AnnotatedEdge {
    pub fn edge_color(&self) -> Option<EdgeColor> {
        self.impact.as_ref().map(|i| edge_color(i.score))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnnotatedNode {
    pub protein: ProteinIdx,
    pub is_center: bool,
    pub docking: Option<DockingResult>,
}

impl AnnotatedNode {
    pub fn node_color(&self) -> Option<NodeColor> {
        self.docking.as_ref().and_then(|d| node_color(d.affinity).ok())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnnotatedSubgraph {
    pub subgraph: Subgraph,
    pub edges: Vec<AnnotatedEdge>,
    /// Center first, then members in rank order.
    pub nodes: Vec<AnnotatedNode>,
    pub layer_status: BTreeMap<CriteriaLayer, LayerStatus>,
    pub warnings: BTreeSet<String>,
}

impl AnnotatedSubgraph {
    /// C1 only: every edge gets its tier, C2/C3 are pending.
    pub fn new(subgraph: &Subgraph) -> Self {
        let edges = subgraph
            .edges
            .iter()
            .map(|e| AnnotatedEdge {
                a: e.a,
                b: e.b,
                combined_score: e.combined_score,
                tier: thickness_tier(e.combined_score as i64).expect("store scores are within [0,1000]"),
                impact: None,
            })
            .collect();
        let nodes = std::iter::once(AnnotatedNode {
            protein: subgraph.center,
            is_center: true,
            docking: None,
        })
        .chain(subgraph.member_ids().map(|m| AnnotatedNode {
            protein: m,
            is_center: false,
            docking: None,
        }))
        .collect();
        let layer_status = BTreeMap::from([
            (CriteriaLayer::C1, LayerStatus::Ready),
            (CriteriaLayer::C2, LayerStatus::Pending),
            (CriteriaLayer::C3, LayerStatus::Pending),
        ]);
        Self {
            subgraph: subgraph.clone(),
            edges,
            nodes,
            layer_status,
            warnings: BTreeSet::new(),
        }
    }

    pub fn status(&self, layer: CriteriaLayer) -> &LayerStatus {
        &self.layer_status[&layer]
    }

    pub fn mark_failed(&mut self, layer: CriteriaLayer, reason: impl Into<String>) {
        if layer != CriteriaLayer::C1 {
            self.layer_status.insert(layer, LayerStatus::Failed(reason.into()));
        }
    }

    /// Merge provider results. `None` leaves a layer untouched; `Some`
    /// attaches every result that belongs to this subgraph (others are
    /// ignored with a warning) and then sets the layer Ready on full coverage
    /// or Failed with the number of missing items.
    pub fn merge(
        &self,
        store: &InteractionStore,
        impact: Option<&[ImpactAssessment]>,
        docking: Option<&[DockingResult]>,
    ) -> Self {
        let mut out = self.clone();
        let center = self.subgraph.center;
        let center_id = &store.protein(center).id;

        if let Some(results) = impact {
            for r in results {
                let target = store.index_of(&r.target).filter(|t| self.subgraph.contains(*t));
                let edge = target.and_then(|t| {
                    out.edges
                        .iter_mut()
                        .find(|e| (e.a == center && e.b == t) || (e.b == center && e.a == t))
                });
                match edge {
                    Some(e) if &r.center == center_id => e.impact = Some(r.clone()),
                    _ => {
                        out.warnings
                            .insert(format!("ignored impact result for {} (not in this subgraph)", r.target));
                    }
                }
            }
            let missing = out
                .edges
                .iter()
                .filter(|e| (e.a == center || e.b == center) && e.impact.is_none())
                .count();
            out.layer_status.insert(CriteriaLayer::C2, coverage_status(missing, "edges"));
        }

        if let Some(results) = docking {
            for r in results {
                let node = store
                    .index_of(&r.protein)
                    .and_then(|p| out.nodes.iter_mut().find(|n| !n.is_center && n.protein == p));
                match node {
                    Some(n) => n.docking = Some(r.clone()),
                    None => {
                        out.warnings
                            .insert(format!("ignored docking result for {} (not in this subgraph)", r.protein));
                    }
                }
            }
            let missing = out.nodes.iter().filter(|n| !n.is_center && n.docking.is_none()).count();
            out.layer_status.insert(CriteriaLayer::C3, coverage_status(missing, "nodes"));
        }
        out
    }
}

fn coverage_status(missing: usize, what: &str) -> LayerStatus {
    if missing == 0 {
        LayerStatus::Ready
    } else {
        LayerStatus::Failed(format!("{missing} {what} missing"))
    }
}

pub fn annotate(
    store: &InteractionStore,
    subgraph: &Subgraph,
    impact: Option<&[ImpactAssessment]>,
    docking: Option<&[DockingResult]>,
) -> AnnotatedSubgraph {
    AnnotatedSubgraph::new(subgraph).merge(store, impact, docking)
}

pub fn text_hash(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ImpactKey {
    pub provider: String,
    pub center: String,
    pub impact_hash: String,
    pub candidate: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DockingKey {
    pub provider: String,
    pub ligand_hash: String,
    pub protein: String,
}

/// Memo of successful provider results. Failures are never cached.
#[derive(Debug, Clone, Default)]
pub struct CriteriaCache {
    impact: HashMap<ImpactKey, ImpactAssessment>,
    docking: HashMap<DockingKey, DockingResult>,
}

impl CriteriaCache {
    fn impact_key(provider: &str, center: &str, impact_text: &str, candidate: &str) -> ImpactKey {
        ImpactKey {
            provider: provider.to_string(),
            center: center.to_string(),
            impact_hash: text_hash(impact_text),
            candidate: candidate.to_string(),
        }
    }

    /// All assessments for the batch, or `None` if any candidate is missing.
    pub fn impact_batch(
        &self,
        provider: &str,
        center: &str,
        impact_text: &str,
        candidates: &[ProteinRef],
    ) -> Option<Vec<ImpactAssessment>> {
        candidates
            .iter()
            .map(|c| {
                self.impact
                    .get(&Self::impact_key(provider, center, impact_text, &c.id))
                    .cloned()
            })
            .collect()
    }

    pub fn store_impact(&mut self, provider: &str, impact_text: &str, assessments: &[ImpactAssessment]) {
        for a in assessments {
            self.impact
                .insert(Self::impact_key(provider, &a.center, impact_text, &a.target), a.clone());
        }
    }

    pub fn docking(&self, provider: &str, ligand_hash: &str, protein: &str) -> Option<&DockingResult> {
        self.docking.get(&DockingKey {
            provider: provider.to_string(),
            ligand_hash: ligand_hash.to_string(),
            protein: protein.to_string(),
        })
    }

    pub fn store_docking(&mut self, provider: &str, ligand_hash: &str, results: &[DockingResult]) {
        for r in results {
            self.docking.insert(
                DockingKey {
                    provider: provider.to_string(),
                    ligand_hash: ligand_hash.to_string(),
                    protein: r.protein.clone(),
                },
                r.clone(),
            );
        }
    }

    pub fn clear(&mut self) {
        self.impact.clear();
        self.docking.clear();
    }
}
