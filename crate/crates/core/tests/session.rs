mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::sync::{Arc, Mutex};

use chrono::{TimeZone, Utc};
use happier_core::graph::{partition, CriteriaLayer, Partition};
use happier_core::ingest::{ingest_links, InteractionStore};
use happier_core::session::{
    bookmark_graph, create_session, read_events, replay_bookmarks, Clock, EventAction, Session, SessionError,
    EVENTS_FILE,
};
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::read_fixture;

const CENTER_ID: &str = "9606.ENSP00000340820";

fn network() -> (InteractionStore, Partition) {
    let (store, _) = ingest_links(
        &read_fixture("mapt_network.links.tsv"),
        &read_fixture("mapt_network.info.tsv"),
    )
    .unwrap();
    let part = partition(&store, CENTER_ID, 55).unwrap();
    (store, part)
}

fn new_session(store: &InteractionStore, dir: Option<std::path::PathBuf>) -> Session {
    let state = create_session(
        store,
        "0f1e2d3c-aaaa-bbbb-cccc-000011112222".into(),
        Utc.with_ymd_and_hms(2025, 3, 1, 12, 0, 0).unwrap(),
        "MAPT",
        &read_fixture("8p34_fragment.pdb"),
        "Reduce the capacity to phosphorylate MAPT",
        &read_fixture("roscovitine.sdf"),
    )
    .unwrap();
    Session::new(state, dir, Clock::deterministic()).unwrap()
}

#[test]
fn random_actions_replay_to_the_live_state() {
    let (store, part) = network();
    let symbols: Vec<String> = part.subgraphs[..3]
        .iter()
        .flat_map(|sg| sg.member_ids().map(|m| store.protein(m).symbol.clone()))
        .take(40)
        .collect();
    let dir = common::scratch_dir();
    let mut session = new_session(&store, Some(dir.path().to_path_buf()));
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut log = String::new();
    for step in 0..1000 {
        let target = symbols.choose(&mut rng).unwrap().clone();
        match rng.random_range(0..6) {
            0 => {
                session.toggle_bookmark(&store, &target).unwrap();
            }
            1 => {
                let present = rng.random_bool(0.5);
                session.set_bookmark(&store, &target, present).unwrap();
            }
            2 => {
                session.record(&store, EventAction::Bookmark { target }, None).unwrap();
            }
            3 => {
                session.record(&store, EventAction::Unbookmark { target }, None).unwrap();
            }
            4 => {
                let index = rng.random_range(1..=part.len());
                session.record(&store, EventAction::ViewSubgraph { index }, None).unwrap();
            }
            _ => {
                let action = EventAction::ToggleLayer { layer: CriteriaLayer::C3, active: rng.random_bool(0.5) };
                session.record(&store, action, Some(format!("step {step}"))).unwrap();
            }
        }
        assert_eq!(session.state().bookmarks, replay_bookmarks(&session.state().events), "step {step}");

        // The log only ever grows by appending.
        let now = std::fs::read_to_string(dir.path().join(EVENTS_FILE)).unwrap();
        assert!(now.starts_with(&log), "step {step} rewrote history");
        log = now;
    }
    let seqs: Vec<u64> = session.state().events.iter().map(|e| e.seq).collect();
    assert_eq!(seqs, (1..=seqs.len() as u64).collect::<Vec<_>>());
    assert!(session.state().events.windows(2).all(|w| w[0].ts <= w[1].ts));

    let reloaded = Session::load(dir.path(), Clock::deterministic()).unwrap();
    assert_eq!(reloaded.state(), session.state());
}

#[test]
fn persisted_session_deep_equals_live_session() {
    let (store, _) = network();
    let dir = common::scratch_dir();
    let mut session = new_session(&store, Some(dir.path().to_path_buf()));
    session.set_bookmark(&store, "CDK5", true).unwrap();
    session.record(&store, EventAction::OpenDetail { target: "gsk3b".into() }, None).unwrap();
    session.record(&store, EventAction::Note {}, Some("looks promising".into())).unwrap();
    let loaded = Session::load(dir.path(), Clock::System).unwrap();
    assert_eq!(loaded.state(), session.state());
    assert_eq!(loaded.state().ligand.atoms.len(), 26);
    assert_eq!(loaded.state().protein.atoms.len(), 50);
    // Targets are stored as ids whatever the client sent.
    assert_eq!(loaded.state().events[1].action.target(), store.resolve("GSK3B").map(|i| store.protein(i).id.as_str()));
}

#[test]
fn torn_final_line_is_dropped_but_gaps_are_corrupt() {
    let (store, _) = network();
    let dir = common::scratch_dir();
    let mut session = new_session(&store, Some(dir.path().to_path_buf()));
    session.set_bookmark(&store, "CDK5", true).unwrap();
    session.set_bookmark(&store, "FYN", true).unwrap();
    let path = dir.path().join(EVENTS_FILE);
    let intact = std::fs::read_to_string(&path).unwrap();

    std::fs::write(&path, format!("{intact}{{\"v\":1,\"seq\":3,\"ki")).unwrap();
    let loaded = Session::load(dir.path(), Clock::System).unwrap();
    assert_eq!(loaded.state().events.len(), 2);
    assert_eq!(loaded.state().bookmarks.len(), 2);

    let second_only: String = intact.lines().skip(1).map(|l| format!("{l}\n")).collect();
    std::fs::write(&path, second_only).unwrap();
    assert!(matches!(read_events(&path), Err(SessionError::Corrupt(_))));
}

#[test]
fn concurrent_toggles_both_land() {
    let (store, _) = network();
    let store = Arc::new(store);
    let dir = common::scratch_dir();
    let session = Arc::new(Mutex::new(new_session(&store, Some(dir.path().to_path_buf()))));
    let handles: Vec<_> = (0..2)
        .map(|_| {
            let (s, st) = (Arc::clone(&session), Arc::clone(&store));
            std::thread::spawn(move || s.lock().unwrap().toggle_bookmark(&st, "PIN1").unwrap())
        })
        .collect();
    let outcomes: BTreeSet<bool> = handles.into_iter().map(|h| h.join().unwrap()).collect();
    assert_eq!(outcomes, BTreeSet::from([true, false]));
    let live = session.lock().unwrap();
    assert_eq!(live.state().events.len(), 2);
    assert!(live.state().bookmarks.is_empty());
    assert_eq!(read_events(&dir.path().join(EVENTS_FILE)).unwrap().len(), 2);
}

#[test]
fn bookmark_filter_keeps_exactly_the_selected_subgraphs() {
    let (store, part) = network();
    let mut session = new_session(&store, None);
    // Independent placement: rank in the full neighbor list divided by 55.
    let ranked = store.neighbors(CENTER_ID).unwrap();
    let picks = [0usize, 60, 130, 170, 500];
    let mut expected_sub = BTreeMap::new();
    for &r in &picks {
        let id = ranked[r].0.id.clone();
        session.set_bookmark(&store, &id, true).unwrap();
        expected_sub.insert(id, r / 55 + 1);
    }
    for filter in [vec![1], vec![2, 4], vec![1, 3], vec![10], vec![5, 6]] {
        let f: BTreeSet<usize> = filter.iter().copied().collect();
        let view = bookmark_graph(session.state(), &store, &part, &BTreeMap::new(), Some(&f));
        let got: BTreeSet<String> = view.nodes.iter().filter(|n| !n.is_center).map(|n| store.protein(n.protein).id.clone()).collect();
        let want: BTreeSet<String> = expected_sub.iter().filter(|(_, s)| f.contains(s)).map(|(id, _)| id.clone()).collect();
        assert_eq!(got, want, "filter {filter:?}");
        assert_eq!(view.edges.len(), want.len());
        for (idx, sub) in &view.subgraph_of {
            assert_eq!(expected_sub[&store.protein(*idx).id], *sub);
        }
    }
    let all = bookmark_graph(session.state(), &store, &part, &BTreeMap::new(), None);
    assert_eq!(all.nodes.len(), picks.len() + 1);
    assert!(all.nodes[0].is_center);
}
