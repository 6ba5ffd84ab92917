mod fixtures;

use std::collections::BTreeMap;
use std::fs;
use std::io::Write as _;
use std::net::SocketAddr;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use happier_core::criteria::{AffinityTable, Corpus, DockingProvider, ImpactProvider, OfflineDockingProvider, OfflineImpactProvider};
use happier_core::ingest::{ingest_links, InteractionStore, SnapshotError};
use happier_core::linkography::{
    self, AnalysisParams, EmbeddingProvider, HashedTermEmbedder, LabelOptions, LinkographyError,
};
use happier_core::session::{Clock, Session, SessionError};
use happier_server::remote::{RemoteDockingProvider, RemoteEmbedder, RemoteImpactProvider};
use happier_server::{AppState, Providers, ServerConfig};

/// Exit-code contract: 0 ok, 2 usage/format, 3 data, 4 provider.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into() }
    }
    fn data(message: impl Into<String>) -> Self {
        Self { code: 3, message: message.into() }
    }
    fn provider(message: impl Into<String>) -> Self {
        Self { code: 4, message: message.into() }
    }
}

type CmdResult = Result<(), Failure>;

#[derive(Parser)]
#[command(name = "happier", version, about = "Explore protein interaction neighborhoods and analyze exploration sessions")]
struct Cli {
    /// Log level for diagnostics on stderr (error, warn, info, debug, trace).
    #[arg(long, global = true, env = "HAPPIER_LOG", default_value = "warn")]
    log_level: tracing_subscriber::filter::LevelFilter,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a snapshot from STRING protein.links and protein.info files.
    Ingest {
        #[arg(long)]
        links: PathBuf,
        #[arg(long)]
        info: PathBuf,
        /// Snapshot directory.
        #[arg(long)]
        out: PathBuf,
    },
    /// Serve the HTTP API over a snapshot.
    Serve(ServeArgs),
    /// Linkography analysis of a transcript or a stored session.
    Linkography(LinkographyArgs),
    /// Write the synthetic fixture set.
    Fixtures {
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = fixtures::DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = fixtures::DEFAULT_NEIGHBORS)]
        neighbors: usize,
    },
}

#[derive(Args)]
struct ServeArgs {
    /// Snapshot directory written by `ingest`; sessions are kept under it.
    #[arg(long, env = "HAPPIER_DB")]
    db: PathBuf,
    #[arg(long, default_value = "127.0.0.1")]
    host: String,
    /// 0 picks a free port; the bound address is printed on startup.
    #[arg(long, default_value_t = 8080)]
    port: u16,
    /// `offline`, `none`, or an http(s) endpoint.
    #[arg(long, default_value = "offline")]
    impact_provider: String,
    /// `offline`, `none`, or an http(s) endpoint.
    #[arg(long, default_value = "offline")]
    docking_provider: String,
    /// `offline` or an http(s) endpoint.
    #[arg(long, default_value = "offline")]
    embedding_provider: String,
    /// Literature corpus directory for the offline impact provider.
    #[arg(long)]
    corpus: Option<PathBuf>,
    /// `protein<TAB>affinity` table for the offline docking provider.
    #[arg(long)]
    affinities: Option<PathBuf>,
    /// Deterministic session ids and timestamps.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = happier_server::state::DEFAULT_MAX_INFLIGHT)]
    max_inflight: usize,
}

#[derive(Args)]
struct LinkographyArgs {
    #[arg(long, conflicts_with = "session", required_unless_present = "session")]
    transcript: Option<PathBuf>,
    /// Session id; the session is read from `<db>/sessions/<id>`.
    #[arg(long, requires = "db")]
    session: Option<String>,
    #[arg(long, env = "HAPPIER_DB")]
    db: Option<PathBuf>,
    #[arg(long, default_value_t = linkography::DEFAULT_THRESHOLD)]
    threshold: f64,
    #[arg(long, default_value_t = linkography::DEFAULT_K_FRACTION)]
    k_fraction: f64,
    /// CSV of submitted targets: `target[,confidence]`, optional header.
    #[arg(long)]
    submitted: Option<PathBuf>,
    /// Center symbol (defaults to the session's center).
    #[arg(long)]
    center: Option<String>,
    /// Only count a target as present in a move that also names the center.
    #[arg(long)]
    require_center: bool,
    #[arg(long, default_value = "offline")]
    embedding_provider: String,
    /// Report path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    tracing_subscriber::fmt()
        .with_max_level(cli.log_level)
        .with_writer(std::io::stderr)
        .init();
    let result = match cli.command {
        Command::Ingest { links, info, out } => ingest(&links, &info, &out),
        Command::Serve(args) => serve(args),
        Command::Linkography(args) => run_linkography(args),
        Command::Fixtures { out, seed, neighbors } => write_fixtures(&out, seed, neighbors),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))
}

fn ingest(links: &Path, info: &Path, out: &Path) -> CmdResult {
    let (links, info) = (read(links)?, read(info)?);
    let (store, warnings) = ingest_links(&links, &info).map_err(|e| Failure::usage(e.to_string()))?;
    for w in &warnings {
        eprintln!("warning: {w}");
    }
    let path = store
        .save(out)
        .map_err(|e| Failure::data(format!("cannot write snapshot: {e}")))?;
    println!("proteins: {}", store.proteins().len());
    println!("interactions: {}", store.interactions().len());
    println!("warnings: {}", warnings.len());
    println!("snapshot: {}", path.display());
    println!("content_hash: {}", store.content_hash());
    Ok(())
}

fn load_store(db: &Path) -> Result<InteractionStore, Failure> {
    InteractionStore::load(db).map_err(|e| match e {
        SnapshotError::Missing(_) | SnapshotError::Corrupt(_) => Failure::data(e.to_string()),
        other => Failure::data(other.to_string()),
    })
}

fn is_url(spec: &str) -> bool {
    spec.starts_with("http://") || spec.starts_with("https://")
}

fn embedder(spec: &str) -> Result<Arc<dyn EmbeddingProvider>, Failure> {
    match spec {
        "offline" => Ok(Arc::new(HashedTermEmbedder)),
        url if is_url(url) => Ok(Arc::new(RemoteEmbedder::new(url))),
        other => Err(Failure::usage(format!("embedding provider must be `offline` or a URL, got `{other}`"))),
    }
}

/// Resolve provider flags. Everything is validated before any file is
/// read or socket bound.
fn providers(args: &ServeArgs) -> Result<Providers, Failure> {
    let need = |flag: &Option<PathBuf>, name: &str, provider: &str| {
        flag.clone()
            .ok_or_else(|| Failure::usage(format!("--{provider}-provider offline needs --{name}")))
    };
    enum Plan {
        None,
        Offline(PathBuf),
        Remote(String),
    }
    let plan = |spec: &str, flag: &Option<PathBuf>, name: &str, provider: &str| -> Result<Plan, Failure> {
        match spec {
            "none" => Ok(Plan::None),
            "offline" => Ok(Plan::Offline(need(flag, name, provider)?)),
            url if is_url(url) => Ok(Plan::Remote(url.to_string())),
            other => Err(Failure::usage(format!(
                "--{provider}-provider must be offline, none or a URL, got `{other}`"
            ))),
        }
    };
    let impact_plan = plan(&args.impact_provider, &args.corpus, "corpus", "impact")?;
    let docking_plan = plan(&args.docking_provider, &args.affinities, "affinities", "docking")?;
    let embedder = embedder(&args.embedding_provider)?;

    let impact: Option<Arc<dyn ImpactProvider>> = match impact_plan {
        Plan::None => None,
        Plan::Remote(url) => Some(Arc::new(RemoteImpactProvider::new(url))),
        Plan::Offline(dir) => {
            let corpus =
                Corpus::load(&dir).map_err(|e| Failure::data(format!("cannot load corpus {}: {e}", dir.display())))?;
            Some(Arc::new(OfflineImpactProvider::new(corpus)))
        }
    };
    let docking: Option<Arc<dyn DockingProvider>> = match docking_plan {
        Plan::None => None,
        Plan::Remote(url) => Some(Arc::new(RemoteDockingProvider::new(url))),
        Plan::Offline(file) => {
            let table = AffinityTable::load(&file).map_err(|e| Failure::data(e.to_string()))?;
            Some(Arc::new(OfflineDockingProvider::new(table)))
        }
    };
    Ok(Providers {
        impact,
        docking,
        embedder,
    })
}

fn serve(args: ServeArgs) -> CmdResult {
    let addr: SocketAddr = format!("{}:{}", args.host, args.port)
        .parse()
        .map_err(|e| Failure::usage(format!("bad --host/--port: {e}")))?;
    let providers = providers(&args)?;
    let store = load_store(&args.db)?;
    let config = ServerConfig {
        sessions_dir: Some(args.db.join("sessions")),
        max_inflight: args.max_inflight.max(1),
        seed: args.seed,
        ..ServerConfig::default()
    };
    let state = AppState::new(store, providers, config);
    let runtime = tokio::runtime::Builder::new_multi_thread()
        .enable_all()
        .build()
        .map_err(|e| Failure::data(format!("cannot start runtime: {e}")))?;
    runtime.block_on(async move {
        let listener = tokio::net::TcpListener::bind(addr)
            .await
            .map_err(|e| Failure::usage(format!("cannot bind {addr}: {e}")))?;
        let bound = listener
            .local_addr()
            .map_err(|e| Failure::data(e.to_string()))?;
        println!("listening on http://{bound}");
        let _ = std::io::stdout().flush();
        let shutdown = async {
            let _ = tokio::signal::ctrl_c().await;
        };
        happier_server::serve(listener, state, shutdown)
            .await
            .map_err(|e| Failure::data(format!("server error: {e}")))
    })
}

fn read_submitted(path: &Path) -> Result<(Vec<String>, BTreeMap<String, f64>), Failure> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    let mut targets = Vec::new();
    let mut confidence = BTreeMap::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
        let target = record.get(0).unwrap_or("").to_string();
        if target.is_empty() || (i == 0 && target.eq_ignore_ascii_case("target")) {
            continue;
        }
        if let Some(raw) = record.get(1).filter(|c| !c.is_empty()) {
            let value: f64 = raw.parse().map_err(|_| {
                Failure::usage(format!("{} line {}: bad confidence `{raw}`", path.display(), i + 1))
            })?;
            confidence.insert(target.clone(), value);
        }
        targets.push(target);
    }
    Ok((targets, confidence))
}

fn run_linkography(args: LinkographyArgs) -> CmdResult {
    linkography::check_parameters(args.threshold, args.k_fraction).map_err(|e| Failure::usage(e.to_string()))?;
    let embedder = embedder(&args.embedding_provider)?;
    let (submitted, confidence) = match &args.submitted {
        Some(p) => read_submitted(p)?,
        None => (Vec::new(), BTreeMap::new()),
    };

    let (moves, session_center) = match (&args.transcript, &args.session) {
        (Some(path), _) => {
            let text = read(path)?;
            let moves = linkography::segment_moves(&text).map_err(|e| Failure::data(e.to_string()))?;
            (moves, None)
        }
        (None, Some(id)) => {
            let db = args.db.as_ref().expect("clap enforces --db with --session");
            let store = load_store(db)?;
            let dir = db.join("sessions").join(id);
            let session = Session::load(&dir, Clock::System).map_err(|e| match e {
                SessionError::NotFound(_) => Failure::data(format!("session {id} not found under {}", db.display())),
                other => Failure::data(other.to_string()),
            })?;
            let symbol_of =
                |pid: &str| store.by_id(pid).map_or_else(|| pid.to_string(), |p| p.symbol.clone());
            let moves = linkography::moves_from_events(&session.state().events, &symbol_of);
            (moves, Some(session.state().center_symbol.clone()))
        }
        (None, None) => return Err(Failure::usage("give --transcript or --session")),
    };

    let params = AnalysisParams {
        threshold: args.threshold,
        k_fraction: args.k_fraction,
        center_symbol: args.center.or(session_center).unwrap_or_default(),
        options: LabelOptions {
            require_center: args.require_center,
        },
    };
    let report = linkography::analyze(&*embedder, &moves, &params, &submitted, &confidence).map_err(|e| match e {
        LinkographyError::ProviderUnavailable(_) | LinkographyError::InvalidEmbedding(_) => {
            Failure::provider(e.to_string())
        }
        LinkographyError::InvalidConfidence { .. } => Failure::usage(e.to_string()),
        _ => Failure::data(e.to_string()),
    })?;
    let json = serde_json::to_string_pretty(&report).expect("report serializes");
    match &args.out {
        Some(path) => fs::write(path, json + "\n")
            .map_err(|e| Failure::data(format!("cannot write {}: {e}", path.display())))?,
        None => println!("{json}"),
    }
    eprintln!(
        "moves: {}  links: {}  k: {}  divergent: {:?}  convergent: {:?}",
        report.moves.len(),
        report.links.len(),
        report.k,
        report.divergent,
        report.convergent
    );
    Ok(())
}

fn write_fixtures(out: &Path, seed: u64, neighbors: usize) -> CmdResult {
    if !(150..=5000).contains(&neighbors) {
        return Err(Failure::usage("--neighbors must be between 150 and 5000"));
    }
    let written =
        fixtures::generate(out, seed, neighbors).map_err(|e| Failure::data(format!("cannot write fixtures: {e}")))?;
    for p in written {
        println!("{}", p.display());
    }
    Ok(())
}
