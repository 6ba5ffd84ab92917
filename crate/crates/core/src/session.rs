//! Exploration sessions: inputs, bookmarks and the append-only event log.
//!
//! On disk a session is a directory holding `session.json` (inputs and the
//! bookmark set) and `events.jsonl` (one event per line, written before the
//! in-memory state changes). Bookmarks are always recoverable by folding the
//! Bookmark/Unbookmark events.

use std::collections::{BTreeMap, BTreeSet};
use std::fs::{self, OpenOptions};
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicI64, Ordering};
use std::sync::Arc;

use chrono::{DateTime, TimeZone, Utc};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chem::{self, ChemError, LigandStructure, ProteinStructure};
use crate::criteria::{AnnotatedEdge, AnnotatedNode, AnnotatedSubgraph};
use crate::graph::{thickness_tier, CriteriaLayer, Partition};
use crate::ingest::{Interaction, InteractionStore, ProteinIdx};

pub const FORMAT_VERSION: u32 = 1;
pub const SESSION_FILE: &str = "session.json";
pub const EVENTS_FILE: &str = "events.jsonl";

#[derive(Debug, Error)]
pub enum SessionError {
    #[error("PDB input: {0}")]
    Pdb(ChemError),
    #[error("SDF input: {0}")]
    Sdf(ChemError),
    #[error("unknown protein {0}")]
    UnknownProtein(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("session {0} not found")]
    NotFound(String),
    #[error("session data corrupt: {0}")]
    Corrupt(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

pub type Result<T> = std::result::Result<T, SessionError>;

/// Kind and kind-specific payload of a logged user action.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "payload")]
pub enum EventAction {
    ViewSubgraph { index: usize },
    ToggleLayer { layer: CriteriaLayer, active: bool },
    OpenDetail { target: String },
    Bookmark { target: String },
    Unbookmark { target: String },
    Note {},
}

impl EventAction {
    pub fn target(&self) -> Option<&str> {
        match self {
            Self::OpenDetail { target } | Self::Bookmark { target } | Self::Unbookmark { target } => Some(target),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SessionEvent {
    pub v: u32,
    pub seq: u64,
    #[serde(flatten)]
    pub action: EventAction,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub text: Option<String>,
    pub ts: DateTime<Utc>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SessionState {
    pub session_id: String,
    pub created_at: DateTime<Utc>,
    /// Center protein id.
    pub center: String,
    pub center_symbol: String,
    pub impact_text: String,
    pub pdb: String,
    pub sdf: String,
    pub protein: ProteinStructure,
    pub ligand: LigandStructure,
    pub bookmarks: BTreeSet<String>,
    pub events: Vec<SessionEvent>,
}

/// `session.json` contents.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct SessionFile {
    v: u32,
    session_id: String,
    created_at: DateTime<Utc>,
    center: String,
    center_symbol: String,
    impact_text: String,
    pdb: String,
    sdf: String,
    bookmarks: Vec<String>,
}

/// Bookmark set implied by an event sequence.
pub fn replay_bookmarks<'a>(events: impl IntoIterator<Item = &'a SessionEvent>) -> BTreeSet<String> {
    let mut set = BTreeSet::new();
    for e in events {
        match &e.action {
            EventAction::Bookmark { target } => {
                set.insert(target.clone());
            }
            EventAction::Unbookmark { target } => {
                set.remove(target);
            }
            _ => {}
        }
    }
    set
}

/// Validate the three inputs and build a fresh session.
pub fn create_session(
    store: &InteractionStore,
    session_id: String,
    created_at: DateTime<Utc>,
    center_symbol: &str,
    pdb: &str,
    impact_text: &str,
    sdf: &str,
) -> Result<SessionState> {
    if impact_text.trim().is_empty() {
        return Err(SessionError::InvalidInput("impact_text is blank".into()));
    }
    let center = store
        .resolve(center_symbol.trim())
        .ok_or_else(|| SessionError::UnknownProtein(center_symbol.to_string()))?;
    let protein = chem::parse_pdb(pdb).map_err(SessionError::Pdb)?;
    let ligand = chem::parse_sdf(sdf).map_err(SessionError::Sdf)?;
    let p = store.protein(center);
    Ok(SessionState {
        session_id,
        created_at,
        center: p.id.clone(),
        center_symbol: p.symbol.clone(),
        impact_text: impact_text.trim().to_string(),
        pdb: pdb.to_string(),
        sdf: sdf.to_string(),
        protein,
        ligand,
        bookmarks: BTreeSet::new(),
        events: Vec::new(),
    })
}

/// Wall clock, or a deterministic clock that advances one second per read.
#[derive(Debug, Clone)]
pub enum Clock {
    System,
    Stepped { start: DateTime<Utc>, ticks: Arc<AtomicI64> },
}

impl Clock {
    pub fn stepped(start: DateTime<Utc>) -> Self {
        Self::Stepped {
            start,
            ticks: Arc::new(AtomicI64::new(0)),
        }
    }

    /// Stepped clock starting 2025-01-01T00:00:00Z.
    pub fn deterministic() -> Self {
        Self::stepped(Utc.with_ymd_and_hms(2025, 1, 1, 0, 0, 0).unwrap())
    }

    pub fn now(&self) -> DateTime<Utc> {
        match self {
            Self::System => Utc::now(),
            Self::Stepped { start, ticks } => *start + chrono::Duration::seconds(ticks.fetch_add(1, Ordering::SeqCst)),
        }
    }
}

/// Session id source; seeded in test mode so ids are reproducible.
#[derive(Debug)]
pub struct SessionIds {
    rng: ChaCha8Rng,
}

impl SessionIds {
    pub fn random() -> Self {
        Self {
            rng: ChaCha8Rng::from_os_rng(),
        }
    }

    pub fn seeded(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Lowercase hex in 8-4-4-4-12 groups.
    pub fn next_id(&mut self) -> String {
        let bytes: [u8; 16] = self.rng.random();
        let h = hex::encode(bytes);
        format!("{}-{}-{}-{}-{}", &h[0..8], &h[8..12], &h[12..16], &h[16..20], &h[20..32])
    }
}

/// A live session, optionally backed by a directory.
#[derive(Debug)]
pub struct Session {
    state: SessionState,
    dir: Option<PathBuf>,
    clock: Clock,
}

impl Session {
    /// Wrap a new state; with `dir`, writes `session.json` and an empty
    /// `events.jsonl` there.
    pub fn new(state: SessionState, dir: Option<PathBuf>, clock: Clock) -> Result<Self> {
        let session = Self { state, dir, clock };
        if let Some(dir) = &session.dir {
            fs::create_dir_all(dir)?;
            OpenOptions::new().create(true).append(true).open(dir.join(EVENTS_FILE))?;
            session.write_snapshot()?;
        }
        Ok(session)
    }

    pub fn in_memory(state: SessionState) -> Self {
        Self {
            state,
            dir: None,
            clock: Clock::System,
        }
    }

    pub fn state(&self) -> &SessionState {
        &self.state
    }

    pub fn id(&self) -> &str {
        &self.state.session_id
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    pub fn is_bookmarked(&self, target_id: &str) -> bool {
        self.state.bookmarks.contains(target_id)
    }

    fn resolve_target(store: &InteractionStore, target: &str) -> Result<String> {
        store
            .resolve(target)
            .map(|i| store.protein(i).id.clone())
            .ok_or_else(|| SessionError::UnknownProtein(target.to_string()))
    }

    /// Flip bookmark membership of `target` (id or symbol); returns the new
    /// membership. The Bookmark/Unbookmark event is durable before the flip.
    pub fn toggle_bookmark(&mut self, store: &InteractionStore, target: &str) -> Result<bool> {
        let id = Self::resolve_target(store, target)?;
        let now_present = !self.state.bookmarks.contains(&id);
        let action = if now_present {
            EventAction::Bookmark { target: id }
        } else {
            EventAction::Unbookmark { target: id }
        };
        self.append(action, None)?;
        Ok(now_present)
    }

    /// Idempotent set/clear; only logs an event when membership changes.
    /// Returns whether it changed.
    pub fn set_bookmark(&mut self, store: &InteractionStore, target: &str, present: bool) -> Result<bool> {
        let id = Self::resolve_target(store, target)?;
        if self.state.bookmarks.contains(&id) == present {
            return Ok(false);
        }
        let action = if present {
            EventAction::Bookmark { target: id }
        } else {
            EventAction::Unbookmark { target: id }
        };
        self.append(action, None)?;
        Ok(true)
    }

    /// Log a client-reported event. Targets are resolved to protein ids;
    /// Bookmark/Unbookmark events update the bookmark set as in replay.
    pub fn record(
        &mut self,
        store: &InteractionStore,
        mut action: EventAction,
        text: Option<String>,
    ) -> Result<&SessionEvent> {
        match &mut action {
            EventAction::OpenDetail { target } | EventAction::Bookmark { target } | EventAction::Unbookmark { target } => {
                *target = Self::resolve_target(store, target)?;
            }
            EventAction::Note {} => {
                if text.as_deref().is_none_or(|t| t.trim().is_empty()) {
                    return Err(SessionError::InvalidInput("a Note event needs text".into()));
                }
            }
            EventAction::ViewSubgraph { index } if *index == 0 => {
                return Err(SessionError::InvalidInput("subgraph indices start at 1".into()));
            }
            _ => {}
        }
        self.append(action, text)
    }

    fn append(&mut self, action: EventAction, text: Option<String>) -> Result<&SessionEvent> {
        let seq = self.state.events.last().map_or(1, |e| e.seq + 1);
        let mut ts = self.clock.now();
        if let Some(last) = self.state.events.last() {
            ts = ts.max(last.ts);
        }
        let event = SessionEvent {
            v: FORMAT_VERSION,
            seq,
            action,
            text,
            ts,
        };
        if let Some(dir) = &self.dir {
            let mut line = serde_json::to_string(&event).map_err(|e| SessionError::Corrupt(e.to_string()))?;
            line.push('\n');
            let mut f = OpenOptions::new().create(true).append(true).open(dir.join(EVENTS_FILE))?;
            f.write_all(line.as_bytes())?;
            f.flush()?;
        }
        let changes_bookmarks = match &event.action {
            EventAction::Bookmark { target } => self.state.bookmarks.insert(target.clone()),
            EventAction::Unbookmark { target } => self.state.bookmarks.remove(target),
            _ => false,
        };
        self.state.events.push(event);
        if changes_bookmarks && self.dir.is_some() {
            self.write_snapshot()?;
        }
        Ok(self.state.events.last().expect("just pushed"))
    }

    fn write_snapshot(&self) -> Result<()> {
        let Some(dir) = &self.dir else { return Ok(()) };
        let s = &self.state;
        let file = SessionFile {
            v: FORMAT_VERSION,
            session_id: s.session_id.clone(),
            created_at: s.created_at,
            center: s.center.clone(),
            center_symbol: s.center_symbol.clone(),
            impact_text: s.impact_text.clone(),
            pdb: s.pdb.clone(),
            sdf: s.sdf.clone(),
            bookmarks: s.bookmarks.iter().cloned().collect(),
        };
        let tmp = dir.join(format!("{SESSION_FILE}.tmp"));
        fs::write(&tmp, serde_json::to_vec_pretty(&file).expect("plain data serializes"))?;
        fs::rename(tmp, dir.join(SESSION_FILE))?;
        Ok(())
    }

    /// Load a session directory. Bookmarks come from replaying the event
    /// log; a torn final line (crash mid-append) is dropped.
    pub fn load(dir: &Path, clock: Clock) -> Result<Self> {
        let snapshot_path = dir.join(SESSION_FILE);
        let raw = match fs::read_to_string(&snapshot_path) {
            Ok(r) => r,
            Err(e) if e.kind() == io::ErrorKind::NotFound => {
                return Err(SessionError::NotFound(dir.display().to_string()))
            }
            Err(e) => return Err(e.into()),
        };
        let file: SessionFile =
            serde_json::from_str(&raw).map_err(|e| SessionError::Corrupt(format!("{SESSION_FILE}: {e}")))?;
        if file.v != FORMAT_VERSION {
            return Err(SessionError::Corrupt(format!("unsupported session version {}", file.v)));
        }
        let events = read_events(&dir.join(EVENTS_FILE))?;
        let protein = chem::parse_pdb(&file.pdb).map_err(SessionError::Pdb)?;
        let ligand = chem::parse_sdf(&file.sdf).map_err(SessionError::Sdf)?;
        let state = SessionState {
            session_id: file.session_id,
            created_at: file.created_at,
            center: file.center,
            center_symbol: file.center_symbol,
            impact_text: file.impact_text,
            pdb: file.pdb,
            sdf: file.sdf,
            protein,
            ligand,
            bookmarks: replay_bookmarks(&events),
            events,
        };
        let session = Self {
            state,
            dir: Some(dir.to_path_buf()),
            clock,
        };
        if session.state.bookmarks.iter().ne(file.bookmarks.iter()) {
            session.write_snapshot()?;
        }
        Ok(session)
    }
}

/// Parse an `events.jsonl` file, checking that sequence numbers run 1, 2, …
pub fn read_events(path: &Path) -> Result<Vec<SessionEvent>> {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(Vec::new()),
        Err(e) => return Err(e.into()),
    };
    let complete = text.ends_with('\n') || text.is_empty();
    let lines: Vec<&str> = text.lines().collect();
    let mut events = Vec::with_capacity(lines.len());
    for (i, line) in lines.iter().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        match serde_json::from_str::<SessionEvent>(line) {
            Ok(e) => {
                if e.seq != events.len() as u64 + 1 {
                    return Err(SessionError::Corrupt(format!("{EVENTS_FILE} line {}: seq {}", i + 1, e.seq)));
                }
                events.push(e);
            }
            Err(_) if i + 1 == lines.len() && !complete => break,
            Err(e) => return Err(SessionError::Corrupt(format!("{EVENTS_FILE} line {}: {e}", i + 1))),
        }
    }
    Ok(events)
}

/// Personalized graph of bookmarked PPIs, shaped like an annotated subgraph.
#[derive(Debug, Clone, PartialEq)]
pub struct BookmarkView {
    pub center: ProteinIdx,
    /// Center first, then bookmarked targets.
    pub nodes: Vec<AnnotatedNode>,
    /// Center–target edges of bookmarked targets that interact with the
    /// center.
    pub edges: Vec<AnnotatedEdge>,
    /// Target → 1-based subgraph index, for targets inside the partition.
    pub subgraph_of: BTreeMap<ProteinIdx, usize>,
}

/// Assemble the bookmark view, optionally restricted to the given subgraph
/// indices. Annotations come from the latest annotated subgraph for each
/// index when one is available.
pub fn bookmark_graph(
    state: &SessionState,
    store: &InteractionStore,
    partition: &Partition,
    annotated: &BTreeMap<usize, AnnotatedSubgraph>,
    filter: Option<&BTreeSet<usize>>,
) -> BookmarkView {
    let center = partition.center;
    let mut targets: Vec<(usize, usize, ProteinIdx)> = Vec::new();
    for id in &state.bookmarks {
        let Some(idx) = store.index_of(id) else { continue };
        let sub = partition.subgraph_of(idx);
        if let Some(f) = filter {
            if !sub.is_some_and(|s| f.contains(&s)) {
                continue;
            }
        }
        let rank = sub
            .and_then(|s| partition.get(s))
            .and_then(|sg| sg.members.iter().position(|(m, _)| *m == idx))
            .unwrap_or(usize::MAX);
        targets.push((sub.unwrap_or(usize::MAX), rank, idx));
    }
    targets.sort();

    let mut view = BookmarkView {
        center,
        nodes: vec![AnnotatedNode {
            protein: center,
            is_center: true,
            docking: None,
        }],
        edges: Vec::new(),
        subgraph_of: BTreeMap::new(),
    };
    for (sub, _, idx) in targets {
        let ann = annotated.get(&sub);
        if sub != usize::MAX {
            view.subgraph_of.insert(idx, sub);
        }
        let node = ann
            .and_then(|a| a.nodes.iter().find(|n| n.protein == idx && !n.is_center).cloned())
            .unwrap_or(AnnotatedNode {
                protein: idx,
                is_center: false,
                docking: None,
            });
        view.nodes.push(node);
        let edge = ann
            .and_then(|a| {
                a.edges
                    .iter()
                    .find(|e| (e.a == center && e.b == idx) || (e.b == center && e.a == idx))
                    .cloned()
            })
            .or_else(|| {
                store.score_between(center, idx).map(|s| {
                    let Interaction { a, b, combined_score } = if center < idx {
                        Interaction { a: center, b: idx, combined_score: s }
                    } else {
                        Interaction { a: idx, b: center, combined_score: s }
                    };
                    AnnotatedEdge {
                        a,
                        b,
                        combined_score,
                        tier: thickness_tier(combined_score as i64).expect("store scores are within [0,1000]"),
                        impact: None,
                    }
                })
            });
        view.edges.extend(edge);
    }
    view
}
