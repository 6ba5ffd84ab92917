use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, RwLock};

use happier_core::chem::LigandStructure;
use happier_core::criteria::{
    self, text_hash, AnnotatedSubgraph, CriteriaCache, DockingProvider, DockingResult, ImpactProvider, ProteinRef,
};
use happier_core::graph::{partition, CriteriaLayer, GraphError, Partition, DEFAULT_CHUNK_TARGET};
use happier_core::ingest::InteractionStore;
use happier_core::linkography::{EmbeddingProvider, HashedTermEmbedder};
use happier_core::session::{self, bookmark_graph, BookmarkView, Clock, Session, SessionIds};
use tokio::sync::Semaphore;

use crate::error::ApiError;

pub const DEFAULT_MAX_INFLIGHT: usize = 4;

/// Criteria and embedding backends. A missing provider disables its layer.
#[derive(Clone)]
pub struct Providers {
    pub impact: Option<Arc<dyn ImpactProvider>>,
    pub docking: Option<Arc<dyn DockingProvider>>,
    pub embedder: Arc<dyn EmbeddingProvider>,
}

impl Default for Providers {
    fn default() -> Self {
        Self {
            impact: None,
            docking: None,
            embedder: Arc::new(HashedTermEmbedder),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ServerConfig {
    /// Where session directories live; `None` keeps sessions in memory.
    pub sessions_dir: Option<PathBuf>,
    /// Bound on provider batches in flight across all sessions.
    pub max_inflight: usize,
    /// Seeds session ids and switches to the stepped clock.
    pub seed: Option<u64>,
    pub chunk_target: usize,
}

impl Default for ServerConfig {
    fn default() -> Self {
        Self {
            sessions_dir: None,
            max_inflight: DEFAULT_MAX_INFLIGHT,
            seed: None,
            chunk_target: DEFAULT_CHUNK_TARGET,
        }
    }
}

#[derive(Clone)]
pub struct AppState {
    inner: Arc<Inner>,
}

struct Inner {
    store: Arc<InteractionStore>,
    providers: Providers,
    config: ServerConfig,
    sessions: RwLock<HashMap<String, Arc<SessionEntry>>>,
    limiter: Arc<Semaphore>,
    ids: Mutex<SessionIds>,
    clock: Clock,
}

/// A live session plus everything derived from its immutable inputs.
pub struct SessionEntry {
    /// Serializes mutations (bookmarks, events) within the session.
    pub session: tokio::sync::Mutex<Session>,
    pub partition: Partition,
    pub center: ProteinRef,
    pub impact_text: String,
    ligand: Arc<LigandStructure>,
    ligand_hash: String,
    /// Provider results; held across a batch so one session never runs
    /// the same batch twice concurrently.
    cache: tokio::sync::Mutex<CriteriaCache>,
}

/// Input triple for a new session.
#[derive(Debug, Clone, serde::Deserialize)]
pub struct NewSession {
    pub center_symbol: String,
    pub pdb: String,
    pub impact_text: String,
    pub sdf: String,
}

fn valid_session_id(id: &str) -> bool {
    id.len() >= 8 && id.bytes().all(|b| b.is_ascii_lowercase() || b.is_ascii_digit() || b == b'-')
}

impl AppState {
    pub fn new(store: InteractionStore, providers: Providers, config: ServerConfig) -> Self {
        let (ids, clock) = match config.seed {
            Some(seed) => (SessionIds::seeded(seed), Clock::deterministic()),
            None => (SessionIds::random(), Clock::System),
        };
        Self {
            inner: Arc::new(Inner {
                store: Arc::new(store),
                limiter: Arc::new(Semaphore::new(config.max_inflight.max(1))),
                providers,
                config,
                sessions: RwLock::new(HashMap::new()),
                ids: Mutex::new(ids),
                clock,
            }),
        }
    }

    pub fn store(&self) -> &InteractionStore {
        &self.inner.store
    }

    pub fn providers(&self) -> &Providers {
        &self.inner.providers
    }

    fn session_dir(&self, id: &str) -> Option<PathBuf> {
        self.inner.config.sessions_dir.as_ref().map(|d| d.join(id))
    }

    fn entry_for(&self, session: Session) -> Result<SessionEntry, ApiError> {
        let store = &self.inner.store;
        let st = session.state();
        let partition = partition(store, &st.center, self.inner.config.chunk_target).map_err(|e| match e {
            GraphError::NoNeighbors(_) => {
                ApiError::invalid(format!("{} has no interaction partners to explore", st.center_symbol))
            }
            other => ApiError::internal(other.to_string()),
        })?;
        Ok(SessionEntry {
            center: ProteinRef {
                id: st.center.clone(),
                symbol: st.center_symbol.clone(),
            },
            impact_text: st.impact_text.clone(),
            ligand_hash: text_hash(&st.sdf),
            ligand: Arc::new(st.ligand.clone()),
            partition,
            cache: tokio::sync::Mutex::new(CriteriaCache::default()),
            session: tokio::sync::Mutex::new(session),
        })
    }

    pub fn create_session(&self, input: &NewSession) -> Result<String, ApiError> {
        let id = self.inner.ids.lock().expect("id source poisoned").next_id();
        let state = session::create_session(
            &self.inner.store,
            id.clone(),
            self.inner.clock.now(),
            &input.center_symbol,
            &input.pdb,
            &input.impact_text,
            &input.sdf,
        )
        .map_err(|e| match e {
            // An unknown center is a bad request here, not a missing resource.
            session::SessionError::UnknownProtein(s) => ApiError::invalid(format!("unknown center protein {s}"))
                .with_detail(serde_json::json!({"field": "center_symbol"})),
            other => other.into(),
        })?;
        // Validate the neighborhood before anything touches disk.
        let probe = Session::in_memory(state.clone());
        self.entry_for(probe)?;
        let session = Session::new(state, self.session_dir(&id), self.inner.clock.clone())?;
        let entry = Arc::new(self.entry_for(session)?);
        self.inner
            .sessions
            .write()
            .expect("session map poisoned")
            .insert(id.clone(), entry);
        Ok(id)
    }

    /// Live session by id, loading it from disk on first use.
    pub fn session(&self, id: &str) -> Result<Arc<SessionEntry>, ApiError> {
        if let Some(e) = self.inner.sessions.read().expect("session map poisoned").get(id) {
            return Ok(e.clone());
        }
        let missing = || ApiError::not_found(format!("session {id} not found"));
        if !valid_session_id(id) {
            return Err(missing());
        }
        let dir = self.session_dir(id).ok_or_else(missing)?;
        if !dir.join(session::SESSION_FILE).is_file() {
            return Err(missing());
        }
        let loaded = Session::load(&dir, self.inner.clock.clone())?;
        let entry = Arc::new(self.entry_for(loaded)?);
        let mut map = self.inner.sessions.write().expect("session map poisoned");
        Ok(map.entry(id.to_string()).or_insert(entry).clone())
    }

    async fn run_blocking<T, F>(&self, f: F) -> Result<T, ApiError>
    where
        F: FnOnce() -> T + Send + 'static,
        T: Send + 'static,
    {
        let _permit = self
            .inner
            .limiter
            .clone()
            .acquire_owned()
            .await
            .map_err(|_| ApiError::internal("provider limiter closed"))?;
        tokio::task::spawn_blocking(f)
            .await
            .map_err(|e| ApiError::internal(format!("provider task failed: {e}")))
    }

    /// Subgraph `n` with the requested layers. C1 is always present; C2/C3
    /// are computed on first request and served from the session cache
    /// afterwards. Provider trouble only ever shows up in `layer_status`.
    pub async fn annotated(
        &self,
        entry: &SessionEntry,
        n: usize,
        layers: &BTreeSet<CriteriaLayer>,
        refresh: bool,
    ) -> Result<AnnotatedSubgraph, ApiError> {
        let sg = entry
            .partition
            .get(n)
            .ok_or_else(|| {
                ApiError::not_found(format!(
                    "subgraph {n} does not exist (this session has {})",
                    entry.partition.len()
                ))
            })?
            .clone();
        let store = self.inner.store.clone();
        let mut cache = entry.cache.lock().await;
        if refresh {
            cache.clear();
        }
        let mut ann = AnnotatedSubgraph::new(&sg);
        let members: Vec<ProteinRef> = sg.member_ids().map(|m| ProteinRef::from_store(&store, m)).collect();

        if layers.contains(&CriteriaLayer::C2) {
            match self.inner.providers.impact.clone() {
                None => ann.mark_failed(CriteriaLayer::C2, "impact provider disabled"),
                Some(provider) => {
                    let pid = provider.id().to_string();
                    let cached = cache.impact_batch(&pid, &entry.center.id, &entry.impact_text, &members);
                    match cached {
                        Some(hit) => ann = ann.merge(&store, Some(&hit), None),
                        None => {
                            let (center, text, cands) = (entry.center.clone(), entry.impact_text.clone(), members.clone());
                            let outcome = self
                                .run_blocking(move || criteria::assess_impact(&*provider, &center, &text, &cands))
                                .await?;
                            match outcome {
                                Ok(batch) => {
                                    cache.store_impact(&pid, &entry.impact_text, &batch.assessments);
                                    ann = ann.merge(&store, Some(&batch.assessments), None);
                                    note_failures(&mut ann, "impact", &batch.failed);
                                }
                                Err(e) => ann.mark_failed(CriteriaLayer::C2, e.to_string()),
                            }
                        }
                    }
                }
            }
        }

        if layers.contains(&CriteriaLayer::C3) {
            match self.inner.providers.docking.clone() {
                None => ann.mark_failed(CriteriaLayer::C3, "docking provider disabled"),
                Some(provider) => {
                    let pid = provider.id().to_string();
                    let todo: Vec<ProteinRef> = members
                        .iter()
                        .filter(|m| cache.docking(&pid, &entry.ligand_hash, &m.id).is_none())
                        .cloned()
                        .collect();
                    let mut failure = None;
                    if !todo.is_empty() {
                        let ligand = entry.ligand.clone();
                        let outcome = self
                            .run_blocking(move || criteria::dock(&*provider, &ligand, &todo))
                            .await?;
                        match outcome {
                            Ok(batch) => {
                                cache.store_docking(&pid, &entry.ligand_hash, &batch.results);
                                note_failures(&mut ann, "docking", &batch.failed);
                            }
                            Err(e) => failure = Some(e.to_string()),
                        }
                    }
                    let found: Vec<DockingResult> = members
                        .iter()
                        .filter_map(|m| cache.docking(&pid, &entry.ligand_hash, &m.id).cloned())
                        .collect();
                    ann = ann.merge(&store, None, Some(&found));
                    if let Some(reason) = failure {
                        ann.mark_failed(CriteriaLayer::C3, reason);
                    }
                }
            }
        }
        Ok(ann)
    }

    /// Bookmark view with the latest cached annotations; never calls a
    /// provider.
    pub async fn bookmark_view(
        &self,
        entry: &SessionEntry,
        filter: Option<&BTreeSet<usize>>,
    ) -> Result<(BookmarkView, BTreeSet<String>), ApiError> {
        let state = entry.session.lock().await.state().clone();
        let store = &self.inner.store;
        let cache = entry.cache.lock().await;
        let mut annotated = BTreeMap::new();
        for id in &state.bookmarks {
            let Some(n) = store.index_of(id).and_then(|i| entry.partition.subgraph_of(i)) else {
                continue;
            };
            if annotated.contains_key(&n) {
                continue;
            }
            let sg = entry.partition.get(n).expect("membership points at a subgraph");
            let members: Vec<ProteinRef> = sg.member_ids().map(|m| ProteinRef::from_store(store, m)).collect();
            let mut ann = AnnotatedSubgraph::new(sg);
            if let Some(p) = &self.inner.providers.impact {
                let hits: Vec<_> = members
                    .iter()
                    .filter_map(|m| {
                        cache
                            .impact_batch(p.id(), &entry.center.id, &entry.impact_text, std::slice::from_ref(m))
                            .and_then(|mut v| v.pop())
                    })
                    .collect();
                ann = ann.merge(store, Some(&hits), None);
            }
            if let Some(p) = &self.inner.providers.docking {
                let hits: Vec<_> = members
                    .iter()
                    .filter_map(|m| cache.docking(p.id(), &entry.ligand_hash, &m.id).cloned())
                    .collect();
                ann = ann.merge(store, None, Some(&hits));
            }
            annotated.insert(n, ann);
        }
        let view = bookmark_graph(&state, store, &entry.partition, &annotated, filter);
        Ok((view, state.bookmarks))
    }

    pub async fn analyze_blocking<T, F>(&self, f: F) -> Result<T, ApiError>
    where
        F: FnOnce(&dyn EmbeddingProvider) -> T + Send + 'static,
        T: Send + 'static,
    {
        let embedder = self.inner.providers.embedder.clone();
        self.run_blocking(move || f(&*embedder)).await
    }

    pub fn sessions_dir(&self) -> Option<&Path> {
        self.inner.config.sessions_dir.as_deref()
    }
}

fn note_failures(ann: &mut AnnotatedSubgraph, what: &str, failed: &BTreeMap<String, String>) {
    if let Some((id, reason)) = failed.iter().next() {
        let more = failed.len() - 1;
        let suffix = if more > 0 { format!(" (and {more} more)") } else { String::new() };
        ann.warnings.insert(format!("{what} failed for {id}: {reason}{suffix}"));
    }
}

impl SessionEntry {
    pub fn ligand(&self) -> &LigandStructure {
        &self.ligand
    }
}
