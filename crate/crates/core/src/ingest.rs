//! STRING flat-file ingestion into an immutable protein registry and
//! interaction store, plus the versioned on-disk snapshot.

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

pub const SNAPSHOT_MAGIC: &str = "HPPI1";
pub const SNAPSHOT_FILE: &str = "store.hppi";
pub const MAX_COMBINED_SCORE: u16 = 1000;

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("{file}: missing columns (line {line})")]
    MissingColumns { file: &'static str, line: usize },
    #[error("links line {0}: combined_score outside [0,1000]")]
    ScoreOutOfRange(usize),
    #[error("links line {0}: combined_score is not an integer")]
    InvalidScore(usize),
    #[error("unknown protein {0}")]
    UnknownProtein(String),
}

#[derive(Debug, Error)]
pub enum SnapshotError {
    #[error("snapshot not found at {0}")]
    Missing(PathBuf),
    #[error("snapshot is corrupt: {0}")]
    Corrupt(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Protein {
    pub id: String,
    pub symbol: String,
    pub description: String,
}

/// Undirected interaction, stored with `a < b` by id.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Interaction {
    pub a: ProteinIdx,
    pub b: ProteinIdx,
    pub combined_score: u16,
}

/// Dense registry index of a protein within one store.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ProteinIdx(pub u32);

impl ProteinIdx {
    fn get(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IngestWarning {
    SelfLoop { line: usize, id: String },
    ConflictingScore { line: usize, kept: u16, dropped: u16 },
    DuplicateProtein { line: usize, id: String },
    DuplicateSymbol { symbol: String, kept: String, shadowed: String },
    NotInInfo { id: String },
}

impl std::fmt::Display for IngestWarning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::SelfLoop { line, id } => write!(f, "links line {line}: self-interaction of {id} skipped"),
            Self::ConflictingScore { line, kept, dropped } => {
                write!(f, "links line {line}: conflicting duplicate score {dropped}, kept {kept}")
            }
            Self::DuplicateProtein { line, id } => write!(f, "info line {line}: duplicate protein {id} ignored"),
            Self::DuplicateSymbol { symbol, kept, shadowed } => {
                write!(f, "symbol {symbol} maps to {kept}; {shadowed} only reachable by id")
            }
            Self::NotInInfo { id } => write!(f, "{id} not in info file; symbol derived from id"),
        }
    }
}

/// Immutable snapshot of the C1 evidence base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InteractionStore {
    proteins: Vec<Protein>,
    interactions: Vec<Interaction>,
    by_id: HashMap<String, ProteinIdx>,
    by_symbol: HashMap<String, ProteinIdx>,
    adjacency: Vec<Vec<(ProteinIdx, u16)>>,
}

impl InteractionStore {
    /// Builds the indices. `proteins` must be sorted by id and unique;
    /// interactions canonical (a < b) and unique.
    fn assemble(proteins: Vec<Protein>, interactions: Vec<Interaction>) -> (Self, Vec<IngestWarning>) {
        let mut warnings = Vec::new();
        let by_id = proteins
            .iter()
            .enumerate()
            .map(|(i, p)| (p.id.clone(), ProteinIdx(i as u32)))
            .collect();
        let mut by_symbol: HashMap<String, ProteinIdx> = HashMap::new();
        for (i, p) in proteins.iter().enumerate() {
            let key = p.symbol.to_lowercase();
            match by_symbol.get(&key) {
                Some(kept) => warnings.push(IngestWarning::DuplicateSymbol {
                    symbol: p.symbol.clone(),
                    kept: proteins[kept.get()].id.clone(),
                    shadowed: p.id.clone(),
                }),
                None => {
                    by_symbol.insert(key, ProteinIdx(i as u32));
                }
            }
        }
        let mut adjacency = vec![Vec::new(); proteins.len()];
        for it in &interactions {
            adjacency[it.a.get()].push((it.b, it.combined_score));
            adjacency[it.b.get()].push((it.a, it.combined_score));
        }
        let store = Self {
            proteins,
            interactions,
            by_id,
            by_symbol,
            adjacency,
        };
        (store, warnings)
    }

    pub fn proteins(&self) -> &[Protein] {
        &self.proteins
    }

    pub fn interactions(&self) -> &[Interaction] {
        &self.interactions
    }

    pub fn protein(&self, idx: ProteinIdx) -> &Protein {
        &self.proteins[idx.get()]
    }

    pub fn index_of(&self, id: &str) -> Option<ProteinIdx> {
        self.by_id.get(id).copied()
    }

    /// Case-insensitive symbol lookup.
    pub fn index_of_symbol(&self, symbol: &str) -> Option<ProteinIdx> {
        self.by_symbol.get(&symbol.to_lowercase()).copied()
    }

    /// Resolve an id first, then a symbol.
    pub fn resolve(&self, id_or_symbol: &str) -> Option<ProteinIdx> {
        self.index_of(id_or_symbol).or_else(|| self.index_of_symbol(id_or_symbol))
    }

    pub fn by_id(&self, id: &str) -> Option<&Protein> {
        self.index_of(id).map(|i| self.protein(i))
    }

    pub fn adjacency(&self, idx: ProteinIdx) -> &[(ProteinIdx, u16)] {
        &self.adjacency[idx.get()]
    }

    pub fn score_between(&self, a: ProteinIdx, b: ProteinIdx) -> Option<u16> {
        self.adjacency[a.get()].iter().find(|(n, _)| *n == b).map(|(_, s)| *s)
    }

    /// Neighbors of `center` by descending combined score; ties by ascending
    /// symbol, then ascending id. The center itself is never listed.
    pub fn neighbors(&self, center: &str) -> Result<Vec<(&Protein, u16)>, IngestError> {
        let idx = self
            .index_of(center)
            .ok_or_else(|| IngestError::UnknownProtein(center.to_string()))?;
        Ok(self
            .neighbor_indices(idx)
            .into_iter()
            .map(|(n, s)| (self.protein(n), s))
            .collect())
    }

    pub fn neighbor_indices(&self, center: ProteinIdx) -> Vec<(ProteinIdx, u16)> {
        let mut out: Vec<(ProteinIdx, u16)> = self.adjacency[center.get()]
            .iter()
            .copied()
            .filter(|(n, _)| *n != center)
            .collect();
        out.sort_by(|(a, sa), (b, sb)| {
            let (pa, pb) = (self.protein(*a), self.protein(*b));
            sb.cmp(sa)
                .then_with(|| pa.symbol.cmp(&pb.symbol))
                .then_with(|| pa.id.cmp(&pb.id))
        });
        out
    }

    /// Line-oriented snapshot text: magic header, counts, one JSON array per
    /// protein and per interaction, then a SHA-256 trailer over everything
    /// before it.
    pub fn to_snapshot(&self) -> String {
        let mut body = String::new();
        body.push_str(SNAPSHOT_MAGIC);
        body.push('\n');
        body.push_str(
            &serde_json::json!({"proteins": self.proteins.len(), "interactions": self.interactions.len()})
                .to_string(),
        );
        body.push('\n');
        for p in &self.proteins {
            body.push_str(&serde_json::to_string(&(&p.id, &p.symbol, &p.description)).expect("string tuple"));
            body.push('\n');
        }
        for it in &self.interactions {
            body.push_str(&format!("[{},{},{}]\n", it.a.0, it.b.0, it.combined_score));
        }
        let digest = hex::encode(Sha256::digest(body.as_bytes()));
        body.push_str("#sha256:");
        body.push_str(&digest);
        body.push('\n');
        body
    }

    pub fn from_snapshot(text: &str) -> Result<Self, SnapshotError> {
        let corrupt = |m: &str| SnapshotError::Corrupt(m.to_string());
        if !text.starts_with(SNAPSHOT_MAGIC) {
            return Err(corrupt("missing HPPI1 magic header"));
        }
        let trailer_at = text.rfind("#sha256:").ok_or_else(|| corrupt("missing checksum trailer"))?;
        let (body, trailer) = text.split_at(trailer_at);
        let expected = trailer.trim_start_matches("#sha256:").trim();
        if hex::encode(Sha256::digest(body.as_bytes())) != expected {
            return Err(corrupt("checksum mismatch"));
        }

        let mut lines = body.lines().skip(1);
        #[derive(Deserialize)]
        struct Counts {
            proteins: usize,
            interactions: usize,
        }
        let counts: Counts = lines
            .next()
            .and_then(|l| serde_json::from_str(l).ok())
            .ok_or_else(|| corrupt("bad counts line"))?;
        let mut proteins = Vec::with_capacity(counts.proteins);
        for _ in 0..counts.proteins {
            let (id, symbol, description): (String, String, String) = lines
                .next()
                .and_then(|l| serde_json::from_str(l).ok())
                .ok_or_else(|| corrupt("bad protein line"))?;
            proteins.push(Protein { id, symbol, description });
        }
        let mut interactions = Vec::with_capacity(counts.interactions);
        for _ in 0..counts.interactions {
            let (a, b, s): (u32, u32, u16) = lines
                .next()
                .and_then(|l| serde_json::from_str(l).ok())
                .ok_or_else(|| corrupt("bad interaction line"))?;
            if a >= b || b as usize >= proteins.len() || s > MAX_COMBINED_SCORE {
                return Err(corrupt("interaction violates store invariants"));
            }
            interactions.push(Interaction {
                a: ProteinIdx(a),
                b: ProteinIdx(b),
                combined_score: s,
            });
        }
        if lines.next().is_some() {
            return Err(corrupt("trailing records"));
        }
        Ok(Self::assemble(proteins, interactions).0)
    }

    pub fn save(&self, dir: &Path) -> Result<PathBuf, SnapshotError> {
        fs::create_dir_all(dir)?;
        let path = dir.join(SNAPSHOT_FILE);
        let tmp = dir.join(format!("{SNAPSHOT_FILE}.tmp"));
        fs::write(&tmp, self.to_snapshot())?;
        fs::rename(&tmp, &path)?;
        Ok(path)
    }

    pub fn load(dir: &Path) -> Result<Self, SnapshotError> {
        let path = dir.join(SNAPSHOT_FILE);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Err(SnapshotError::Missing(path)),
            Err(e) if e.kind() == io::ErrorKind::InvalidData => {
                return Err(SnapshotError::Corrupt("not UTF-8".into()))
            }
            Err(e) => return Err(e.into()),
        };
        Self::from_snapshot(&text)
    }

    /// Hex SHA-256 of the snapshot encoding.
    pub fn content_hash(&self) -> String {
        hex::encode(Sha256::digest(self.to_snapshot().as_bytes()))
    }
}

fn symbol_from_id(id: &str) -> String {
    id.rsplit('.').next().unwrap_or(id).to_string()
}

fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .skip(1)
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.trim().is_empty())
}

/// Ingest a STRING `protein.links` file (space separated, header
/// `protein1 protein2 combined_score`, extra channel columns allowed) and a
/// `protein.info` file (tab separated: id, preferred name, size, annotation).
pub fn ingest_links(links: &str, info: &str) -> Result<(InteractionStore, Vec<IngestWarning>), IngestError> {
    let mut warnings = Vec::new();

    let info_header = info.lines().next().unwrap_or("");
    if info_header.split('\t').count() < 4 {
        return Err(IngestError::MissingColumns { file: "info", line: 1 });
    }
    let mut proteins: BTreeMap<String, Protein> = BTreeMap::new();
    for (line_no, line) in data_lines(info) {
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() < 4 || cols[0].trim().is_empty() {
            return Err(IngestError::MissingColumns { file: "info", line: line_no });
        }
        let id = cols[0].trim().to_string();
        if proteins.contains_key(&id) {
            warnings.push(IngestWarning::DuplicateProtein { line: line_no, id });
            continue;
        }
        let mut symbol = cols[1].trim().to_string();
        if symbol.is_empty() {
            symbol = symbol_from_id(&id);
        }
        proteins.insert(
            id.clone(),
            Protein {
                id,
                symbol,
                description: cols[3..].join("\t").trim().to_string(),
            },
        );
    }

    let links_header: Vec<&str> = links.lines().next().unwrap_or("").split_whitespace().collect();
    let col = |name: &str| links_header.iter().position(|h| *h == name);
    let (Some(c1), Some(c2), Some(cs)) = (col("protein1"), col("protein2"), col("combined_score")) else {
        return Err(IngestError::MissingColumns { file: "links", line: 1 });
    };
    let needed = c1.max(c2).max(cs) + 1;

    let mut pairs: BTreeMap<(String, String), u16> = BTreeMap::new();
    for (line_no, line) in data_lines(links) {
        let cols: Vec<&str> = line.split_whitespace().collect();
        if cols.len() < needed {
            return Err(IngestError::MissingColumns { file: "links", line: line_no });
        }
        let score: i64 = cols[cs].parse().map_err(|_| IngestError::InvalidScore(line_no))?;
        if !(0..=MAX_COMBINED_SCORE as i64).contains(&score) {
            return Err(IngestError::ScoreOutOfRange(line_no));
        }
        let score = score as u16;
        let (p, q) = (cols[c1], cols[c2]);
        if p == q {
            warnings.push(IngestWarning::SelfLoop { line: line_no, id: p.to_string() });
            continue;
        }
        let key = if p < q { (p.to_string(), q.to_string()) } else { (q.to_string(), p.to_string()) };
        match pairs.get_mut(&key) {
            Some(existing) => {
                if *existing != score {
                    warnings.push(IngestWarning::ConflictingScore {
                        line: line_no,
                        kept: (*existing).max(score),
                        dropped: (*existing).min(score),
                    });
                    *existing = (*existing).max(score);
                }
            }
            None => {
                pairs.insert(key, score);
            }
        }
    }

    for (a, b) in pairs.keys() {
        for id in [a, b] {
            if !proteins.contains_key(id) {
                warnings.push(IngestWarning::NotInInfo { id: id.clone() });
                proteins.insert(
                    id.clone(),
                    Protein {
                        id: id.clone(),
                        symbol: symbol_from_id(id),
                        description: String::new(),
                    },
                );
            }
        }
    }

    let proteins: Vec<Protein> = proteins.into_values().collect();
    let index: HashMap<&str, u32> = proteins.iter().enumerate().map(|(i, p)| (p.id.as_str(), i as u32)).collect();
    let interactions = pairs
        .iter()
        .map(|((a, b), s)| Interaction {
            a: ProteinIdx(index[a.as_str()]),
            b: ProteinIdx(index[b.as_str()]),
            combined_score: *s,
        })
        .collect();
    let (store, mut assembly_warnings) = InteractionStore::assemble(proteins, interactions);
    warnings.append(&mut assembly_warnings);
    Ok((store, warnings))
}

#[cfg(test)]
mod tests {
    use super::*;

    const INFO: &str = "#string_protein_id\tpreferred_name\tprotein_size\tannotation\n\
        9606.A\tALPHA\t100\tfirst protein\n\
        9606.B\tBETA\t120\tsecond protein\n\
        9606.C\tCENTER\t300\tcenter protein\n\
        9606.X\tXRAY\t90\tx\n\
        9606.Y\tYANKEE\t90\ty\n\
        9606.Z\tZULU\t90\tz\n";

    fn links(rows: &[&str]) -> String {
        let mut s = String::from("protein1 protein2 combined_score\n");
        for r in rows {
            s.push_str(r);
            s.push('\n');
        }
        s
    }

    #[test]
    fn symmetric_duplicate_collapses() {
        let (store, _) = ingest_links(&links(&["9606.A 9606.B 900", "9606.B 9606.A 900"]), INFO).unwrap();
        assert_eq!(store.interactions().len(), 1);
        assert_eq!(store.interactions()[0].combined_score, 900);
    }

    #[test]
    fn self_loop_skipped() {
        let (store, warnings) = ingest_links(&links(&["9606.A 9606.A 500"]), INFO).unwrap();
        assert!(store.interactions().is_empty());
        assert!(matches!(warnings[0], IngestWarning::SelfLoop { line: 2, .. }));
    }

    #[test]
    fn conflicting_duplicate_keeps_max() {
        let (store, warnings) = ingest_links(&links(&["9606.A 9606.B 400", "9606.B 9606.A 700"]), INFO).unwrap();
        assert_eq!(store.interactions()[0].combined_score, 700);
        assert!(matches!(warnings[0], IngestWarning::ConflictingScore { kept: 700, dropped: 400, .. }));
    }

    #[test]
    fn score_range_checked() {
        let err = ingest_links(&links(&["9606.A 9606.B 500", "9606.A 9606.C 1001"]), INFO).unwrap_err();
        assert!(matches!(err, IngestError::ScoreOutOfRange(3)));
        let err = ingest_links(&links(&["9606.A 9606.B -1"]), INFO).unwrap_err();
        assert!(matches!(err, IngestError::ScoreOutOfRange(2)));
    }

    #[test]
    fn missing_columns() {
        let err = ingest_links("protein1 protein2\nA B\n", INFO).unwrap_err();
        assert!(matches!(err, IngestError::MissingColumns { file: "links", line: 1 }));
        let err = ingest_links(&links(&["9606.A 9606.B"]), INFO).unwrap_err();
        assert!(matches!(err, IngestError::MissingColumns { file: "links", line: 2 }));
        let err = ingest_links(&links(&[]), "id\tname\n").unwrap_err();
        assert!(matches!(err, IngestError::MissingColumns { file: "info", .. }));
    }

    #[test]
    fn unknown_proteins_get_id_suffix_symbol() {
        let (store, _) = ingest_links(&links(&["9606.A 9606.ENSP00000999 300"]), INFO).unwrap();
        let p = store.by_id("9606.ENSP00000999").unwrap();
        assert_eq!(p.symbol, "ENSP00000999");
    }

    #[test]
    fn symbol_lookup_is_case_insensitive() {
        let (store, _) = ingest_links(&links(&[]), INFO).unwrap();
        assert_eq!(store.index_of_symbol("alpha"), store.index_of("9606.A"));
        assert_eq!(store.resolve("Beta"), store.index_of("9606.B"));
    }

    #[test]
    fn neighbors_ties_and_empty() {
        let (store, _) = ingest_links(
            &links(&["9606.C 9606.X 700", "9606.C 9606.Y 700", "9606.Z 9606.C 900"]),
            INFO,
        )
        .unwrap();
        let order: Vec<&str> = store.neighbors("9606.C").unwrap().iter().map(|(p, _)| p.symbol.as_str()).collect();
        assert_eq!(order, ["ZULU", "XRAY", "YANKEE"]);
        assert!(store.neighbors("9606.A").unwrap().is_empty());
        assert!(matches!(store.neighbors("nope"), Err(IngestError::UnknownProtein(_))));
    }

    #[test]
    fn snapshot_round_trip_and_corruption() {
        let (store, _) = ingest_links(&links(&["9606.C 9606.X 700", "9606.A 9606.B 12"]), INFO).unwrap();
        let text = store.to_snapshot();
        assert!(text.starts_with("HPPI1\n"));
        assert_eq!(InteractionStore::from_snapshot(&text).unwrap(), store);
        let tampered = text.replace("700", "701");
        assert!(matches!(InteractionStore::from_snapshot(&tampered), Err(SnapshotError::Corrupt(_))));
        assert!(matches!(
            InteractionStore::from_snapshot(&text.replacen("HPPI1", "HPPI2", 1)),
            Err(SnapshotError::Corrupt(_))
        ));
    }
}
