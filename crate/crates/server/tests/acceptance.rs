//! Acceptance run: one PASS/FAIL line per primary criterion, non-zero exit
//! status if any fails.

mod common;
#[path = "../../core/tests/common/mod.rs"]
mod core_common;

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt::Write as _;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use axum::http::StatusCode;
use happier_core::chem::{parse_pdb, parse_sdf};
use happier_core::graph::{edge_color, node_color, partition, thickness_tier, EdgeColor, NodeColor, ThicknessTier};
use happier_core::ingest::ingest_links;
use happier_core::linkography::{
    analyze, build_linkograph, embed, k_for, segment_moves, AnalysisParams, DcLabel, DesignMove, HashedTermEmbedder,
};
use happier_core::session::{read_events, replay_bookmarks, Clock, Session, EVENTS_FILE};
use happier_server::{Providers, ServerConfig};
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use core_common::oracle;

type Check = fn() -> Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn k_rounding() -> Result<String, String> {
    for (n, k) in [(52, 5), (10, 1), (43, 4), (218, 22)] {
        ensure(k_for(n, 0.10) == k, || format!("k({n}) = {}, expected {k}", k_for(n, 0.10)))?;
    }
    for n in 0..=5000 {
        ensure(k_for(n, 0.10) == oracle::k_for(n, 1000), || format!("k({n}) disagrees with exact rounding"))?;
    }
    Ok("k(52)=5 k(10)=1 k(43)=4 k(218)=22".into())
}

fn legend_tables() -> Result<String, String> {
    for s in 0..=1000i64 {
        let want = if s <= 333 {
            ThicknessTier::Thin
        } else if s <= 666 {
            ThicknessTier::Medium
        } else {
            ThicknessTier::Thick
        };
        ensure(thickness_tier(s) == Ok(want), || format!("score {s}"))?;
    }
    for h in -1500..=0i64 {
        let want = if h > -50 {
            NodeColor::Purple
        } else if h >= -200 {
            NodeColor::Orange
        } else {
            NodeColor::Pink
        };
        ensure(node_color(h as f64 / 100.0) == Ok(want), || format!("affinity {}", h as f64 / 100.0))?;
    }
    ensure(edge_color(0.0) == EdgeColor::Gray, || "pathway 0 not gray".into())?;
    for s in 1..=100 {
        ensure(edge_color(s as f64) == EdgeColor::Red, || format!("pathway {s} not red"))?;
    }
    Ok("1001 scores, 1501 affinities, 101 pathway scores".into())
}

fn linkograph_oracle() -> Result<String, String> {
    const VOCAB: [&str; 12] = [
        "cdk5", "binds", "mapt", "docking", "score", "pathway", "edge", "node", "gsk3b", "affinity", "strong", "weak",
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(2718);
    let mut total_links = 0;
    for round in 0..100 {
        let n = rng.random_range(1..=200);
        let texts: Vec<String> = (0..n)
            .map(|_| {
                let len = rng.random_range(1..=6);
                (0..len).map(|_| *VOCAB.choose(&mut rng).unwrap()).collect::<Vec<_>>().join(" ")
            })
            .collect();
        let moves: Vec<DesignMove> =
            texts.iter().enumerate().map(|(i, t)| DesignMove { index: i + 1, text: t.clone() }).collect();
        let lg = build_linkograph(&embed(&HashedTermEmbedder, &moves).map_err(|e| e.to_string())?, 0.75, 0.10)
            .map_err(|e| e.to_string())?;
        let want = oracle::text_linkograph(&texts, 0.75, oracle::k_for(n, 1000));
        let links: Vec<(usize, usize)> = lg.links.iter().map(|l| (l.i, l.j)).collect();
        ensure(links == want.links, || format!("round {round}: links differ"))?;
        ensure(lg.divergent == want.divergent, || format!("round {round}: divergent differs"))?;
        ensure(lg.convergent == want.convergent, || format!("round {round}: convergent differs"))?;
        total_links += links.len();
    }
    Ok(format!("100 move sets, {total_links} links"))
}

fn dc_replay() -> Result<String, String> {
    let mut totals: BTreeMap<DcLabel, usize> = BTreeMap::new();
    for p in 1..=5 {
        let moves = segment_moves(&common::read_fixture(&format!("p{p}_transcript.txt"))).map_err(|e| e.to_string())?;
        let rows = oracle::read_submitted(&common::read_fixture(&format!("p{p}_submitted.csv")));
        let submitted: Vec<String> = rows.iter().map(|(t, _)| t.clone()).collect();
        let confidence = rows.iter().filter_map(|(t, c)| c.map(|c| (t.clone(), c))).collect();
        let params = AnalysisParams { center_symbol: "MAPT".into(), ..AnalysisParams::default() };
        let report = analyze(&HashedTermEmbedder, &moves, &params, &submitted, &confidence).map_err(|e| e.to_string())?;
        let texts: Vec<String> = moves.into_iter().map(|m| m.text).collect();
        let reference = oracle::text_linkograph(&texts, 0.75, oracle::k_for(texts.len(), 1000));
        for (target, label) in &report.labels {
            let want = oracle::label(&texts, &reference, target);
            ensure(format!("{label:?}") == want, || format!("p{p} {target}: {label:?} vs {want}"))?;
            *totals.entry(*label).or_default() += 1;
        }
    }
    let got = [DcLabel::BothDC, DcLabel::EitherDC, DcLabel::NeitherDC].map(|l| totals.get(&l).copied().unwrap_or(0));
    ensure(got == [9, 10, 28], || format!("distribution {got:?}"))?;
    Ok(format!("{} PPIs: {} Both / {} Either / {} Neither", got.iter().sum::<usize>(), got[0], got[1], got[2]))
}

fn partition_invariants() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(31415);
    for round in 0..50 {
        let n = rng.random_range(100..=600);
        let store = core_common::random_store(&mut rng, n);
        let part = partition(&store, core_common::CENTER, 55).map_err(|e| e.to_string())?;
        let center = store.index_of(core_common::CENTER).unwrap();
        let ranked = store.neighbor_indices(center);
        let mut seen = HashSet::new();
        for (i, sg) in part.subgraphs.iter().enumerate() {
            let last = i + 1 == part.len();
            ensure(last || (50..=60).contains(&sg.members.len()), || format!("round {round}: size {}", sg.members.len()))?;
            for m in sg.member_ids() {
                ensure(seen.insert(m), || format!("round {round}: overlap"))?;
            }
            if let Some(next) = part.subgraphs.get(i + 1) {
                ensure(sg.min_score() >= next.max_score(), || format!("round {round}: order broken at {}", i + 1))?;
            }
        }
        let all: HashSet<_> = ranked.iter().map(|(m, _)| *m).collect();
        ensure(seen == all, || format!("round {round}: coverage"))?;
    }
    let store = common::network();
    let part = partition(&store, "9606.ENSP00000340820", 55).map_err(|e| e.to_string())?;
    let neighbors = part.member_count();
    ensure(part.len() == neighbors.div_ceil(55) && part.len() == 10, || format!("{} subgraphs", part.len()))?;
    Ok(format!("50 random stores; fixture {neighbors} neighbors -> {} subgraphs", part.len()))
}

/// Distinct unordered non-self pairs, one pass over the raw rows.
fn distinct_pairs(links: &str) -> usize {
    links
        .lines()
        .skip(1)
        .filter_map(|l| {
            let c: Vec<&str> = l.split_whitespace().collect();
            (c.len() >= 2 && c[0] != c[1]).then(|| if c[0] < c[1] { (c[0], c[1]) } else { (c[1], c[0]) })
        })
        .collect::<HashSet<_>>()
        .len()
}

fn ingest_parse() -> Result<String, String> {
    let mut summary = String::new();
    for name in ["mapt_neighborhood", "mapt_network"] {
        let links = common::read_fixture(&format!("{name}.links.tsv"));
        let info = common::read_fixture(&format!("{name}.info.tsv"));
        let (store, _) = ingest_links(&links, &info).map_err(|e| e.to_string())?;
        let want = distinct_pairs(&links);
        ensure(store.interactions().len() == want, || format!("{name}: {} vs {want}", store.interactions().len()))?;
        let _ = write!(summary, "{name} {want} pairs; ");
    }

    let mut rng = ChaCha8Rng::seed_from_u64(161);
    for i in 0..50 {
        let atoms = rng.random_range(1..=80usize);
        let bonds = if atoms > 1 { rng.random_range(0..=atoms) } else { 0 };
        let mut mol = format!("gen{i}\n  test\n\n{atoms:>3}{bonds:>3}  0  0  0  0  0  0  0  0999 V2000\n");
        for _ in 0..atoms {
            let _ = writeln!(mol, "{:>10.4}{:>10.4}{:>10.4} C   0  0  0  0  0  0  0  0  0  0  0  0", rng.random_range(-9.0..9.0), 0.5, -1.25);
        }
        for _ in 0..bonds {
            let a = rng.random_range(1..atoms);
            let _ = writeln!(mol, "{a:>3}{:>3}  1  0", a + 1);
        }
        mol.push_str("M  END\n$$$$\n");
        let lig = parse_sdf(&mol).map_err(|e| format!("molfile {i}: {e}"))?;
        ensure(lig.atoms.len() == atoms && lig.bonds.len() == bonds, || format!("molfile {i}: counts"))?;
    }

    let pdb_text = common::read_fixture("8p34_fragment.pdb");
    let scanned = pdb_text
        .lines()
        .take_while(|l| !(l.starts_with("END") && !l.starts_with("ENDMDL")))
        .filter(|l| l.starts_with("ATOM  ") || l.starts_with("HETATM"))
        .count();
    let parsed = parse_pdb(&pdb_text).map_err(|e| e.to_string())?.atoms.len();
    ensure(parsed == scanned, || format!("PDB {parsed} vs {scanned}"))?;
    let _ = write!(summary, "50 molfiles; PDB {parsed} atoms");
    Ok(summary)
}

fn degraded_mode() -> Result<String, String> {
    let rt = tokio::runtime::Runtime::new().map_err(|e| e.to_string())?;
    rt.block_on(async {
        let app = common::app(Providers::default(), ServerConfig::default());
        let id = common::create(&app).await;
        let mut requests = 0;
        for round in 0..2 {
            for n in 1..=10 {
                let uri = format!("/sessions/{id}/subgraphs/{n}?layers=c1,c2,c3");
                let (status, view) = common::call(&app, "GET", &uri, None).await;
                requests += 1;
                ensure(status == StatusCode::OK, || format!("round {round} subgraph {n}: {status}"))?;
                ensure(view["layer_status"]["c1"]["status"] == "ready", || format!("subgraph {n}: C1 not ready"))?;
                for layer in ["c2", "c3"] {
                    let s = &view["layer_status"][layer]["status"];
                    ensure(s == "pending" || s == "failed", || format!("subgraph {n}: {layer} is {s}"))?;
                }
                let edges = view["edges"].as_array().cloned().unwrap_or_default();
                ensure(!edges.is_empty() && edges.iter().all(|e| e["thickness_tier"].is_string()), || {
                    format!("subgraph {n}: edges missing tiers")
                })?;
            }
        }
        Ok(format!("{requests} requests answered 200 with C1 only"))
    })
}

fn session_replay() -> Result<String, String> {
    let store = common::network();
    let part = partition(&store, "9606.ENSP00000340820", 55).map_err(|e| e.to_string())?;
    let targets: Vec<String> = part.subgraphs.iter().flat_map(|s| s.member_ids()).map(|m| store.protein(m).id.clone()).collect();
    let dir = core_common::scratch_dir();
    let clock = Clock::deterministic();
    let state = happier_core::session::create_session(
        &store,
        "acceptance-0001".into(),
        clock.now(),
        "MAPT",
        &common::read_fixture("8p34_fragment.pdb"),
        common::IMPACT,
        &common::read_fixture("roscovitine.sdf"),
    )
    .map_err(|e| e.to_string())?;
    let mut session = Session::new(state, Some(dir.path().to_path_buf()), clock).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(1000);
    for _ in 0..1000 {
        let t = &targets[rng.random_range(0..40)];
        session.toggle_bookmark(&store, t).map_err(|e| e.to_string())?;
    }
    let events = read_events(&dir.path().join(EVENTS_FILE)).map_err(|e| e.to_string())?;
    ensure(events.len() == 1000, || format!("{} events on disk", events.len()))?;
    let replayed: BTreeSet<String> = replay_bookmarks(&events);
    ensure(replayed == session.state().bookmarks, || "replayed bookmarks differ from live state".into())?;
    let loaded = Session::load(dir.path(), Clock::deterministic()).map_err(|e| e.to_string())?;
    ensure(loaded.state() == session.state(), || "reloaded session differs".into())?;
    Ok(format!("1000 toggles, {} bookmarks live", replayed.len()))
}

fn main() {
    let checks: [(&str, Check); 8] = [
        ("k-rounding", k_rounding),
        ("legend-tables", legend_tables),
        ("linkograph-oracle-equivalence", linkograph_oracle),
        ("dc-label-replay", dc_replay),
        ("partition-invariants", partition_invariants),
        ("ingest-parse", ingest_parse),
        ("degraded-mode", degraded_mode),
        ("session-replay", session_replay),
    ];
    let started = Instant::now();
    let mut failures = 0;
    for (name, check) in checks {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panicked".into()))
        });
        let ms = t.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("PASS {name} ({ms} ms): {detail}"),
            Err(reason) => {
                failures += 1;
                println!("FAIL {name} ({ms} ms): {reason}");
            }
        }
    }
    println!("{} of {} criteria passed in {:.1} s", checks.len() - failures, checks.len(), started.elapsed().as_secs_f64());
    if failures > 0 {
        std::process::exit(1);
    }
}
