mod common;

use std::collections::HashSet;

use happier_core::graph::{
    edge_color, node_color, partition, thickness_tier, EdgeColor, GraphError, NodeColor, ThicknessTier,
};
use happier_core::ingest::ingest_links;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Legend tier written out directly from the bin boundaries.
fn expected_tier(s: i64) -> ThicknessTier {
    match s {
        0..=333 => ThicknessTier::Thin,
        334..=666 => ThicknessTier::Medium,
        _ => ThicknessTier::Thick,
    }
}

#[test]
fn every_combined_score_has_the_legend_tier() {
    for s in 0..=1000 {
        assert_eq!(thickness_tier(s).unwrap(), expected_tier(s), "score {s}");
    }
    assert_eq!(thickness_tier(-1), Err(GraphError::ScoreOutOfRange(-1)));
    assert_eq!(thickness_tier(1001), Err(GraphError::ScoreOutOfRange(1001)));
}

#[test]
fn affinity_grid_follows_legend_bands() {
    // Integer hundredths keep the band edges exact.
    for h in -1500..=0i64 {
        let a = h as f64 / 100.0;
        let expected = if h > -50 {
            NodeColor::Purple
        } else if h >= -200 {
            NodeColor::Orange
        } else {
            NodeColor::Pink
        };
        assert_eq!(node_color(a).unwrap(), expected, "affinity {a}");
    }
    assert_eq!(node_color(-0.5).unwrap(), NodeColor::Orange);
    assert_eq!(node_color(-0.4999).unwrap(), NodeColor::Purple);
    assert_eq!(node_color(-2.0).unwrap(), NodeColor::Orange);
    assert_eq!(node_color(-2.0001).unwrap(), NodeColor::Pink);
    assert!(node_color(0.01).is_err());
    assert!(node_color(-15.01).is_err());
}

#[test]
fn only_positive_pathway_scores_are_red() {
    assert_eq!(edge_color(0.0), EdgeColor::Gray);
    assert_eq!(edge_color(1e-12), EdgeColor::Red);
    for s in 1..=100 {
        assert_eq!(edge_color(s as f64), EdgeColor::Red);
    }
}

#[test]
fn partitions_of_random_stores_hold_their_invariants() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for round in 0..50 {
        let n = rng.random_range(100..=600);
        let chunk = rng.random_range(50..=60);
        let store = common::random_store(&mut rng, n);
        let center = store.index_of(common::CENTER).unwrap();
        let ranked = store.neighbor_indices(center);
        let part = partition(&store, common::CENTER, chunk).unwrap();

        assert_eq!(part.len(), ranked.len().div_ceil(chunk), "round {round}");
        assert_eq!(part.member_count(), ranked.len());
        let mut seen = HashSet::new();
        for (i, sg) in part.subgraphs.iter().enumerate() {
            assert_eq!(sg.index, i + 1);
            if i + 1 < part.len() {
                assert_eq!(sg.members.len(), chunk);
            } else {
                assert!((1..=chunk).contains(&sg.members.len()));
            }
            for m in sg.member_ids() {
                assert!(seen.insert(m), "member in two subgraphs");
                assert_eq!(part.subgraph_of(m), Some(sg.index));
                assert_ne!(m, center);
            }
            // Scores never increase across a boundary.
            if let Some(next) = part.subgraphs.get(i + 1) {
                assert!(sg.min_score() >= next.max_score());
            }
            // Edges stay inside the view and reproduce the stored scores.
            for e in &sg.edges {
                assert!(e.a < e.b);
                for end in [e.a, e.b] {
                    assert!(end == center || sg.contains(end));
                }
                assert_eq!(store.score_between(e.a, e.b), Some(e.combined_score));
            }
            let spokes = sg.edges.iter().filter(|e| e.a == center || e.b == center).count();
            assert_eq!(spokes, sg.members.len());
        }
        let ranked_ids: Vec<_> = ranked.iter().map(|(m, _)| *m).collect();
        let flattened: Vec<_> = part.subgraphs.iter().flat_map(|s| s.member_ids()).collect();
        assert_eq!(flattened, ranked_ids);
    }
}

#[test]
fn member_member_edges_are_complete() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let store = common::random_store(&mut rng, 200);
    let part = partition(&store, common::CENTER, 55).unwrap();
    for sg in &part.subgraphs {
        let ids: Vec<_> = sg.member_ids().collect();
        let mut expected = 0;
        for (i, a) in ids.iter().enumerate() {
            for b in &ids[i + 1..] {
                expected += store.score_between(*a, *b).is_some() as usize;
            }
        }
        assert_eq!(sg.edges.len(), sg.members.len() + expected);
    }
}

#[test]
fn fixture_network_splits_into_ten_views() {
    let (store, _) = ingest_links(
        &common::read_fixture("mapt_network.links.tsv"),
        &common::read_fixture("mapt_network.info.tsv"),
    )
    .unwrap();
    let part = partition(&store, "9606.ENSP00000340820", 55).unwrap();
    assert_eq!(part.len(), 10);
    assert_eq!(part.member_count(), 517);
    assert_eq!(part.get(10).unwrap().members.len(), 517 - 9 * 55);
    assert!(part.get(0).is_none() && part.get(11).is_none());
}

#[test]
fn partition_rejects_bad_requests() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let store = common::random_store(&mut rng, 100);
    assert_eq!(
        partition(&store, common::CENTER, 49).unwrap_err(),
        GraphError::InvalidChunkTarget(49)
    );
    assert!(matches!(partition(&store, "9606.NOPE", 55), Err(GraphError::UnknownProtein(_))));
}
