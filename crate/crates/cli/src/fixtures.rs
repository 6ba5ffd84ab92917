//! Seeded synthetic data set: a STRING-style network around MAPT, a small
//! literature corpus and affinity tables. Same seed, same bytes.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const CENTER_ID: &str = "9606.ENSP00000340820";
pub const CENTER_SYMBOL: &str = "MAPT";
pub const DEFAULT_NEIGHBORS: usize = 517;
pub const DEFAULT_SEED: u64 = 7;

/// Known tau interactors, in intended rank order.
pub const CURATED: &[&str] = &[
    "BRSK1", "CDK5", "GSK3B", "MARK2", "BRSK2", "MARK1", "MARK3", "MARK4", "FYN", "PIN1", "CDK5R1", "TTBK1", "DYRK1A",
    "CSNK1D", "PPP2CA", "PPP2R1A", "TUBB", "TUBA1A", "TUBB3", "APP", "PSEN1", "SNCA", "MAPK1", "MAPK3", "CAMK2A",
    "PRKACA", "SYK", "ABL1", "LRRK2", "STUB1", "HSP90AA1", "HSPA8", "BAG3", "TTBK2", "CAPN1", "CASP3", "BIN1", "APOE",
    "CLU", "PICALM", "TREM2", "FKBP5", "FKBP4", "S100B", "GRB2", "SH3GL2", "PLCG1", "MAP2", "MAP4", "STMN1", "KIF5B",
    "DCTN1", "NOS1", "CHUK", "PRKCA", "CDK1", "CDK2", "MAPK14", "SGK1", "ROCK1",
];

/// Hand-placed affinities for the 20 top-ranked proteins; includes both
/// color boundaries and both ends of the range.
pub const TOP_AFFINITIES: &[(&str, f64)] = &[
    ("BRSK1", -0.3),
    ("CDK5", -0.5),
    ("GSK3B", -2.0),
    ("MARK2", -0.49),
    ("BRSK2", -2.01),
    ("MARK1", 0.0),
    ("MARK3", -15.0),
    ("MARK4", -1.2),
    ("FYN", -7.8),
    ("PIN1", -0.1),
    ("CDK5R1", -3.4),
    ("TTBK1", -0.75),
    ("DYRK1A", -9.6),
    ("CSNK1D", -1.99),
    ("PPP2CA", -0.51),
    ("PPP2R1A", -4.4),
    ("TUBB", -0.05),
    ("TUBA1A", -2.5),
    ("TUBB3", -1.0),
    ("APP", -11.2),
];

/// Proteins with phosphorylation evidence in the corpus.
const KINASES: &[&str] = &[
    "BRSK1", "CDK5", "GSK3B", "MARK2", "BRSK2", "MARK1", "MARK4", "FYN", "TTBK1", "DYRK1A", "CSNK1D", "MAPK1", "CAMK2A",
    "PRKACA", "SYK", "ABL1", "LRRK2", "TTBK2", "CDK1", "CDK2", "MAPK14", "SGK1", "ROCK1", "PRKCA",
];

const PHOSPHO_TEMPLATES: &[&str] = &[
    "{S} phosphorylates MAPT at serine residues in cortical neurons.",
    "Pharmacological inhibition of {S} reduced its capacity to phosphorylate MAPT in vitro.",
    "In transgenic mice {S} was shown to phosphorylate MAPT within the microtubule binding repeats.",
    "{S} phosphorylates MAPT and lowers its affinity for microtubules.",
];

const OTHER_TEMPLATES: &[&str] = &[
    "{S} binds MAPT and stabilizes microtubule bundles.",
    "{S} expression is elevated in the entorhinal cortex of patients with dementia.",
    "Genetic variants near {S} are associated with late onset neurodegeneration.",
    "{S} colocalizes with MAPT in neurofibrillary tangles.",
    "Loss of {S} alters axonal transport in cultured hippocampal neurons.",
];

const TITLES: &[&str] = &[
    "Kinases acting on tau",
    "Microtubule regulation in neurons",
    "Tau aggregation and neurofibrillary pathology",
    "Axonal transport defects in tauopathies",
    "Genetic risk loci for neurodegeneration",
    "Chaperones and tau clearance",
    "Signalling cascades upstream of tau",
    "Synaptic roles of tau interactors",
    "Proteolytic processing in Alzheimer disease",
    "Tyrosine kinases in neurodegeneration",
];

pub struct Network {
    pub proteins: Vec<(String, String, u32, String)>,
    /// Unordered pairs with score, `a < b` by id.
    pub edges: BTreeMap<(String, String), u16>,
    /// Neighbor ids of the center in intended rank order.
    pub neighbors: Vec<(String, String)>,
}

fn curated_id(i: usize) -> String {
    format!("9606.ENSP{:011}", 210_000 + i * 37)
}

fn synthetic_id(i: usize) -> String {
    format!("9606.ENSP{:011}", 610_000 + i * 53)
}

pub fn network(rng: &mut ChaCha8Rng, neighbor_count: usize) -> Network {
    let mut proteins = vec![(
        CENTER_ID.to_string(),
        CENTER_SYMBOL.to_string(),
        758,
        "Microtubule-associated protein tau; promotes microtubule assembly and stability".to_string(),
    )];
    let mut neighbors = Vec::new();
    let mut edges = BTreeMap::new();
    let add_edge = |edges: &mut BTreeMap<(String, String), u16>, a: &str, b: &str, s: u16| {
        let key = if a < b { (a.to_string(), b.to_string()) } else { (b.to_string(), a.to_string()) };
        edges.entry(key).or_insert(s);
    };

    let mut score = 999u16;
    for (i, sym) in CURATED.iter().take(neighbor_count).enumerate() {
        let id = curated_id(i);
        proteins.push((id.clone(), sym.to_string(), rng.random_range(150..2500), format!("{sym}; tau interactor")));
        add_edge(&mut edges, CENTER_ID, &id, score);
        neighbors.push((id, sym.to_string()));
        score -= rng.random_range(0..=5);
    }
    for i in CURATED.len()..neighbor_count {
        let id = synthetic_id(i);
        let sym = format!("SYN{i:04}");
        proteins.push((id.clone(), sym.clone(), rng.random_range(150..2500), format!("{sym}; uncharacterized protein")));
        add_edge(&mut edges, CENTER_ID, &id, rng.random_range(150..=699));
        neighbors.push((id, sym));
    }
    // Neighbor–neighbor edges and a fringe of proteins two hops out.
    for i in 0..neighbors.len() {
        for _ in 0..2 {
            let j = rng.random_range(0..neighbors.len());
            if i != j {
                add_edge(&mut edges, &neighbors[i].0, &neighbors[j].0, rng.random_range(150..=999));
            }
        }
    }
    for f in 0..25 {
        let id = format!("9606.ENSP{:011}", 910_000 + f * 11);
        let sym = format!("FAR{f:03}");
        proteins.push((id.clone(), sym.clone(), rng.random_range(150..2500), format!("{sym}; distant protein")));
        let j = rng.random_range(0..neighbors.len());
        add_edge(&mut edges, &neighbors[j].0, &id, rng.random_range(150..=999));
    }
    proteins.sort();
    Network {
        proteins,
        edges,
        neighbors,
    }
}

const LINKS_HEADER: &str = "protein1 protein2 combined_score\n";
const INFO_HEADER: &str = "#string_protein_id\tpreferred_name\tprotein_size\tannotation\n";

/// Both orientations of every pair, sorted, as STRING ships them.
pub fn links_text(edges: &BTreeMap<(String, String), u16>) -> String {
    let mut rows: Vec<(&str, &str, u16)> = Vec::new();
    for ((a, b), s) in edges {
        rows.push((a, b, *s));
        rows.push((b, a, *s));
    }
    rows.sort();
    let mut out = String::from(LINKS_HEADER);
    for (a, b, s) in rows {
        let _ = writeln!(out, "{a} {b} {s}");
    }
    out
}

pub fn info_text<'a>(proteins: impl IntoIterator<Item = &'a (String, String, u32, String)>) -> String {
    let mut out = String::from(INFO_HEADER);
    for (id, sym, size, ann) in proteins {
        let _ = writeln!(out, "{id}\t{sym}\t{size}\t{ann}");
    }
    out
}

/// A 300-row excerpt with the usual flat-file mess: reversed duplicates,
/// conflicting duplicate scores, self-loops and ids missing from the info
/// file.
pub fn neighborhood_excerpt(rng: &mut ChaCha8Rng, net: &Network) -> (String, String) {
    let center_edges: Vec<(&str, u16)> = net
        .neighbors
        .iter()
        .take(145)
        .map(|(id, _)| {
            let key = if CENTER_ID < id.as_str() {
                (CENTER_ID.to_string(), id.clone())
            } else {
                (id.clone(), CENTER_ID.to_string())
            };
            (id.as_str(), net.edges[&key])
        })
        .collect();
    let kept: BTreeSet<&str> = center_edges.iter().map(|(id, _)| *id).collect();
    let member_edges: Vec<(&str, &str, u16)> = net
        .edges
        .iter()
        .filter(|((a, b), _)| a != CENTER_ID && b != CENTER_ID && kept.contains(a.as_str()) && kept.contains(b.as_str()))
        .map(|((a, b), s)| (a.as_str(), b.as_str(), *s))
        .take(20)
        .collect();

    let mut rows: Vec<String> = Vec::new();
    for (id, s) in &center_edges {
        rows.push(format!("{CENTER_ID} {id} {s}"));
    }
    for (id, s) in center_edges.iter().take(100) {
        rows.push(format!("{id} {CENTER_ID} {s}"));
    }
    for (id, s) in center_edges.iter().skip(100).take(5) {
        rows.push(format!("{id} {CENTER_ID} {}", s.saturating_sub(40)));
    }
    for (id, _) in center_edges.iter().take(3) {
        rows.push(format!("{id} {id} 999"));
    }
    for (a, b, s) in &member_edges {
        rows.push(format!("{a} {b} {s}"));
    }
    for (a, b, s) in member_edges.iter().take(15) {
        rows.push(format!("{b} {a} {s}"));
    }
    for u in 0..12 {
        rows.push(format!("{CENTER_ID} 9606.ENSP{:011} {}", 990_000 + u * 7, rng.random_range(150..=999)));
    }
    assert_eq!(rows.len(), 300, "excerpt layout must stay at 300 rows");
    rows.shuffle(rng);

    let links = format!("{LINKS_HEADER}{}\n", rows.join("\n"));
    let mut mentioned: BTreeSet<&str> = kept.clone();
    mentioned.insert(CENTER_ID);
    let info = info_text(net.proteins.iter().filter(|p| mentioned.contains(p.0.as_str())));
    (links, info)
}

pub fn corpus(rng: &mut ChaCha8Rng) -> Vec<(String, String)> {
    let mut docs: Vec<Vec<String>> = vec![Vec::new(); TITLES.len()];
    docs[0].push("BRSK1 phosphorylates MAPT by regulating microtubule dynamics.".to_string());
    for (i, sym) in KINASES.iter().enumerate() {
        let evidence = 1 + (i * 7 + rng.random_range(0..3)) % 4;
        for _ in 0..evidence {
            let t = PHOSPHO_TEMPLATES[rng.random_range(0..PHOSPHO_TEMPLATES.len())];
            docs[rng.random_range(0..TITLES.len())].push(t.replace("{S}", sym));
        }
    }
    for sym in CURATED {
        for _ in 0..rng.random_range(0..3) {
            let t = OTHER_TEMPLATES[rng.random_range(0..OTHER_TEMPLATES.len())];
            docs[rng.random_range(0..TITLES.len())].push(t.replace("{S}", sym));
        }
    }
    TITLES
        .iter()
        .zip(docs)
        .enumerate()
        .map(|(i, (title, sentences))| {
            let name = format!("doc{:02}.txt", i + 1);
            let mut body = format!("{title}\n");
            for chunk in sentences.chunks(3) {
                let _ = writeln!(body, "{}\n", chunk.join(" "));
            }
            (name, body)
        })
        .collect()
}

fn fmt_affinity(a: f64) -> String {
    format!("{a:.2}")
}

pub fn affinities(rng: &mut ChaCha8Rng, net: &Network) -> (String, String) {
    let fixed: BTreeMap<&str, f64> = TOP_AFFINITIES.iter().copied().collect();
    let mut all = String::from("protein\taffinity\n");
    let mut top = String::from("protein\taffinity\n");
    for (_, sym) in &net.neighbors {
        let a = match fixed.get(sym.as_str()) {
            Some(a) => {
                let _ = writeln!(top, "{sym}\t{}", fmt_affinity(*a));
                *a
            }
            None => {
                let roll: f64 = rng.random();
                let raw = if roll < 0.3 {
                    rng.random_range(-0.49..=0.0)
                } else if roll < 0.6 {
                    rng.random_range(-2.0..=-0.5)
                } else {
                    rng.random_range(-15.0..-2.01)
                };
                (raw * 100.0_f64).round() / 100.0
            }
        };
        let _ = writeln!(all, "{sym}\t{}", fmt_affinity(a));
    }
    (all, top)
}

/// Write the full fixture set into `out`; returns the written paths.
pub fn generate(out: &Path, seed: u64, neighbor_count: usize) -> std::io::Result<Vec<PathBuf>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let net = network(&mut rng, neighbor_count);
    let (excerpt_links, excerpt_info) = neighborhood_excerpt(&mut rng, &net);
    let docs = corpus(&mut rng);
    let (aff_all, aff_top) = affinities(&mut rng, &net);

    fs::create_dir_all(out.join("corpus"))?;
    let mut files = vec![
        ("mapt_network.links.tsv".to_string(), links_text(&net.edges)),
        ("mapt_network.info.tsv".to_string(), info_text(&net.proteins)),
        ("mapt_neighborhood.links.tsv".to_string(), excerpt_links),
        ("mapt_neighborhood.info.tsv".to_string(), excerpt_info),
        ("affinities.tsv".to_string(), aff_all),
        ("affinities_20.tsv".to_string(), aff_top),
    ];
    files.extend(docs.into_iter().map(|(n, b)| (format!("corpus/{n}"), b)));
    let mut written = Vec::new();
    for (name, body) in files {
        let path = out.join(name);
        fs::write(&path, body)?;
        written.push(path);
    }
    Ok(written)
}
