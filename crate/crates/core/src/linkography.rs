//! Fuzzy linkography over session transcripts.
//!
//! Moves are sentence-level utterances embedded as unit vectors. Two moves
//! are linked when their cosine similarity exceeds a threshold. The `k`
//! moves with the most forward links are divergent, the `k` with the most
//! backward links convergent, and each submitted PPI is labeled by whether
//! its target symbol shows up in divergent and/or convergent moves.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::session::{EventAction, SessionEvent};
use crate::text;

pub const DEFAULT_THRESHOLD: f64 = 0.75;
pub const DEFAULT_K_FRACTION: f64 = 0.10;
pub const EMBEDDING_DIM: usize = 512;

/// Similarities within this distance of the threshold count as equal to it
/// and therefore do not link.
pub const SIMILARITY_EPSILON: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinkographyError {
    #[error("transcript contains no moves")]
    EmptyTranscript,
    #[error("embedding provider unavailable: {0}")]
    ProviderUnavailable(String),
    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),
    #[error("threshold {0} outside (0,1)")]
    InvalidThreshold(f64),
    #[error("k fraction {0} outside (0,1]")]
    InvalidKFraction(f64),
    #[error("confidence {value} for {target} outside [1,7]")]
    InvalidConfidence { target: String, value: f64 },
}

pub type Result<T> = std::result::Result<T, LinkographyError>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DesignMove {
    /// 1-based, chronological.
    pub index: usize,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmbeddedMove {
    pub index: usize,
    pub text: String,
    pub embedding: Vec<f64>,
}

pub fn segment_moves(transcript: &str) -> Result<Vec<DesignMove>> {
    let moves: Vec<DesignMove> = text::sentences(transcript)
        .into_iter()
        .enumerate()
        .map(|(i, text)| DesignMove { index: i + 1, text })
        .collect();
    if moves.is_empty() {
        Err(LinkographyError::EmptyTranscript)
    } else {
        Ok(moves)
    }
}

pub trait EmbeddingProvider: Send + Sync {
    fn id(&self) -> &str;
    /// One vector per text; need not be normalized.
    fn embed_texts(&self, texts: &[String]) -> Result<Vec<Vec<f64>>>;
}

/// 64-bit FNV-1a.
pub fn fnv1a64(bytes: &[u8]) -> u64 {
    const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
    const PRIME: u64 = 0x0000_0100_0000_01b3;
    bytes.iter().fold(OFFSET, |h, b| (h ^ *b as u64).wrapping_mul(PRIME))
}

pub fn bucket_of(token: &str) -> usize {
    (fnv1a64(token.as_bytes()) % EMBEDDING_DIM as u64) as usize
}

/// Offline embedder: lowercase alphanumeric tokens, term frequencies hashed
/// into 512 buckets with FNV-1a 64 (`hash % 512`).
#[derive(Debug, Clone, Copy, Default)]
pub struct HashedTermEmbedder;

impl HashedTermEmbedder {
    pub fn term_vector(text: &str) -> Vec<f64> {
        let mut v = vec![0.0; EMBEDDING_DIM];
        for t in text::tokens(text) {
            v[bucket_of(&t)] += 1.0;
        }
        v
    }
}

impl EmbeddingProvider for HashedTermEmbedder {
    fn id(&self) -> &str {
        "hashed-tf-512"
    }

    fn embed_texts(&self, texts: &[String]) -> Result<Vec<Vec<f64>>> {
        Ok(texts.iter().map(|t| Self::term_vector(t)).collect())
    }
}

fn normalize(mut v: Vec<f64>, index: usize) -> Result<Vec<f64>> {
    if v.iter().any(|x| !x.is_finite()) {
        return Err(LinkographyError::InvalidEmbedding(format!("move {index} has non-finite components")));
    }
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm == 0.0 {
        return Err(LinkographyError::InvalidEmbedding(format!("move {index} embeds to the zero vector")));
    }
    v.iter_mut().for_each(|x| *x /= norm);
    Ok(v)
}

/// Embed and L2-normalize every move. All vectors must share one dimension.
pub fn embed(provider: &dyn EmbeddingProvider, moves: &[DesignMove]) -> Result<Vec<EmbeddedMove>> {
    let texts: Vec<String> = moves.iter().map(|m| m.text.clone()).collect();
    let vectors = provider.embed_texts(&texts)?;
    if vectors.len() != moves.len() {
        return Err(LinkographyError::InvalidEmbedding(format!(
            "{} vectors for {} moves",
            vectors.len(),
            moves.len()
        )));
    }
    let dim = vectors.first().map_or(0, Vec::len);
    moves
        .iter()
        .zip(vectors)
        .map(|(m, v)| {
            if v.len() != dim {
                return Err(LinkographyError::InvalidEmbedding("mixed dimensions".into()));
            }
            Ok(EmbeddedMove {
                index: m.index,
                text: m.text.clone(),
                embedding: normalize(v, m.index)?,
            })
        })
        .collect()
}

/// Dot product of two unit vectors, clamped to [-1, 1].
pub fn cosine(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>().clamp(-1.0, 1.0)
}

/// `max(1, round_half_up(k_fraction * n))`. The half-up step tolerates the
/// representation error of products such as `0.1 * 45`.
pub fn k_for(n: usize, k_fraction: f64) -> usize {
    let raw = k_fraction * n as f64;
    ((raw + 0.5 + 1e-9).floor() as usize).max(1)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Link {
    pub i: usize,
    pub j: usize,
    pub similarity: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Linkograph {
    pub moves: Vec<EmbeddedMove>,
    /// Sorted by (i, j), i < j, 1-based move indices.
    pub links: Vec<Link>,
    pub threshold: f64,
    pub k_fraction: f64,
    pub k: usize,
    /// Forward (i side) and backward (j side) link counts, position p holds
    /// move p + 1.
    pub forward_counts: Vec<usize>,
    pub backward_counts: Vec<usize>,
    /// Ascending move indices.
    pub divergent: Vec<usize>,
    pub convergent: Vec<usize>,
}

pub fn check_parameters(threshold: f64, k_fraction: f64) -> Result<()> {
    if !(threshold > 0.0 && threshold < 1.0) {
        return Err(LinkographyError::InvalidThreshold(threshold));
    }
    if !(k_fraction > 0.0 && k_fraction <= 1.0) {
        return Err(LinkographyError::InvalidKFraction(k_fraction));
    }
    Ok(())
}

/// Top `k` positions by count, ties to the lower index, zero counts excluded.
/// Returned as ascending 1-based move indices.
fn top_k(counts: &[usize], k: usize) -> Vec<usize> {
    let mut ranked: Vec<(usize, usize)> = counts
        .iter()
        .enumerate()
        .filter(|(_, c)| **c > 0)
        .map(|(p, c)| (*c, p))
        .collect();
    ranked.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    let mut chosen: Vec<usize> = ranked.into_iter().take(k).map(|(_, p)| p + 1).collect();
    chosen.sort_unstable();
    chosen
}

/// Links, counts and designations derived from pairwise similarities.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinkStructure {
    pub links: Vec<Link>,
    pub k: usize,
    pub forward_counts: Vec<usize>,
    pub backward_counts: Vec<usize>,
    pub divergent: Vec<usize>,
    pub convergent: Vec<usize>,
}

fn designate(n: usize, links: Vec<Link>, k_fraction: f64) -> LinkStructure {
    let mut forward = vec![0; n];
    let mut backward = vec![0; n];
    for l in &links {
        forward[l.i - 1] += 1;
        backward[l.j - 1] += 1;
    }
    let k = k_for(n, k_fraction);
    LinkStructure {
        links,
        k,
        divergent: top_k(&forward, k),
        convergent: top_k(&backward, k),
        forward_counts: forward,
        backward_counts: backward,
    }
}

/// Link structure over `n` moves from an arbitrary similarity function
/// taking 1-based indices `i < j`.
pub fn link_structure(
    n: usize,
    threshold: f64,
    k_fraction: f64,
    similarity: impl Fn(usize, usize) -> f64,
) -> Result<LinkStructure> {
    check_parameters(threshold, k_fraction)?;
    if n == 0 {
        return Err(LinkographyError::EmptyTranscript);
    }
    let mut links = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            let sim = similarity(i, j);
            if sim > threshold + SIMILARITY_EPSILON {
                links.push(Link { i, j, similarity: sim });
            }
        }
    }
    Ok(designate(n, links, k_fraction))
}

pub fn build_linkograph(moves: &[EmbeddedMove], threshold: f64, k_fraction: f64) -> Result<Linkograph> {
    check_parameters(threshold, k_fraction)?;
    if moves.is_empty() {
        return Err(LinkographyError::EmptyTranscript);
    }
    let n = moves.len();
    // Hashed term vectors are very sparse: scatter move i into a dense
    // scratch row and gather over the non-zeros of each later move.
    let sparse: Vec<Vec<(usize, f64)>> = moves
        .iter()
        .map(|m| {
            m.embedding
                .iter()
                .enumerate()
                .filter(|(_, x)| **x != 0.0)
                .map(|(d, x)| (d, *x))
                .collect()
        })
        .collect();
    let mut scratch = vec![0.0; moves[0].embedding.len()];
    let mut links = Vec::new();
    for i in 0..n {
        for &(d, x) in &sparse[i] {
            scratch[d] = x;
        }
        for j in i + 1..n {
            let sim = sparse[j]
                .iter()
                .map(|&(d, y)| scratch[d] * y)
                .sum::<f64>()
                .clamp(-1.0, 1.0);
            if sim > threshold + SIMILARITY_EPSILON {
                links.push(Link {
                    i: i + 1,
                    j: j + 1,
                    similarity: sim,
                });
            }
        }
        for &(d, _) in &sparse[i] {
            scratch[d] = 0.0;
        }
    }
    let s = designate(n, links, k_fraction);
    Ok(Linkograph {
        moves: moves.to_vec(),
        links: s.links,
        threshold,
        k_fraction,
        k: s.k,
        forward_counts: s.forward_counts,
        backward_counts: s.backward_counts,
        divergent: s.divergent,
        convergent: s.convergent,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum DcLabel {
    BothDC,
    EitherDC,
    NeitherDC,
}

impl DcLabel {
    pub const ALL: [DcLabel; 3] = [DcLabel::BothDC, DcLabel::EitherDC, DcLabel::NeitherDC];
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelOptions {
    /// Also require the center symbol in the same move.
    pub require_center: bool,
}

/// Label each distinct submitted target (case-insensitive; first spelling
/// kept) by presence in divergent and convergent moves.
pub fn label_ppis(
    linkograph: &Linkograph,
    submitted: &[String],
    center_symbol: &str,
    options: LabelOptions,
) -> BTreeMap<String, DcLabel> {
    let tokens_of = |indices: &[usize]| -> Vec<Vec<String>> {
        indices
            .iter()
            .map(|i| text::tokens(&linkograph.moves[i - 1].text))
            .collect()
    };
    let divergent = tokens_of(&linkograph.divergent);
    let convergent = tokens_of(&linkograph.convergent);
    let present = |moves: &[Vec<String>], symbol: &str| {
        moves
            .iter()
            .any(|t| text::mentions(t, symbol) && (!options.require_center || text::mentions(t, center_symbol)))
    };

    let mut seen = HashSet::new();
    let mut out = BTreeMap::new();
    for target in submitted {
        let target = target.trim();
        if target.is_empty() || !seen.insert(target.to_lowercase()) {
            continue;
        }
        let label = match (present(&divergent, target), present(&convergent, target)) {
            (true, true) => DcLabel::BothDC,
            (true, false) | (false, true) => DcLabel::EitherDC,
            (false, false) => DcLabel::NeitherDC,
        };
        out.insert(target.to_string(), label);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub label: DcLabel,
    /// Labeled targets in the group.
    pub n: usize,
    /// Of those, targets with a confidence rating.
    pub rated: usize,
    pub mean: Option<f64>,
    /// Sample standard deviation; needs two ratings.
    pub sd: Option<f64>,
}

/// Descriptive statistics of confidence ratings (1–7) per label. Every
/// label gets a row, empty groups included.
pub fn summarize(labels: &BTreeMap<String, DcLabel>, confidence: &BTreeMap<String, f64>) -> Result<Vec<SummaryRow>> {
    let by_lower: BTreeMap<String, (&String, f64)> =
        confidence.iter().map(|(k, v)| (k.to_lowercase(), (k, *v))).collect();
    for (target, value) in by_lower.values() {
        if !(1.0..=7.0).contains(value) {
            return Err(LinkographyError::InvalidConfidence {
                target: (*target).clone(),
                value: *value,
            });
        }
    }
    Ok(DcLabel::ALL
        .iter()
        .map(|&label| {
            let members: Vec<&String> = labels.iter().filter(|(_, l)| **l == label).map(|(t, _)| t).collect();
            let ratings: Vec<f64> = members
                .iter()
                .filter_map(|t| by_lower.get(&t.to_lowercase()).map(|(_, v)| *v))
                .collect();
            let count = ratings.len();
            let mean = (count > 0).then(|| ratings.iter().sum::<f64>() / count as f64);
            let sd = mean.filter(|_| count > 1).map(|m| {
                (ratings.iter().map(|r| (r - m).powi(2)).sum::<f64>() / (count - 1) as f64).sqrt()
            });
            SummaryRow {
                label,
                n: members.len(),
                rated: count,
                mean,
                sd,
            }
        })
        .collect())
}

/// Canonical text for an event without an utterance.
pub fn render_action(action: &EventAction, symbol_of: &dyn Fn(&str) -> String) -> Option<String> {
    Some(match action {
        EventAction::ViewSubgraph { index } => format!("viewed subgraph {index}"),
        EventAction::ToggleLayer { layer, active } => {
            format!("turned {} layer {layer}", if *active { "on" } else { "off" })
        }
        EventAction::OpenDetail { target } => format!("opened detail for {}", symbol_of(target)),
        EventAction::Bookmark { target } => format!("bookmarked {}", symbol_of(target)),
        EventAction::Unbookmark { target } => format!("unbookmarked {}", symbol_of(target)),
        EventAction::Note {} => return None,
    })
}

/// Design moves from a session log: an event's text (sentence-split) when
/// present, its canonical rendering otherwise.
pub fn moves_from_events(events: &[SessionEvent], symbol_of: &dyn Fn(&str) -> String) -> Vec<DesignMove> {
    let mut texts = Vec::new();
    for e in events {
        match e.text.as_deref().filter(|t| !t.trim().is_empty()) {
            Some(t) => texts.extend(text::sentences(t)),
            None => texts.extend(render_action(&e.action, symbol_of)),
        }
    }
    texts
        .into_iter()
        .enumerate()
        .map(|(i, text)| DesignMove { index: i + 1, text })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportMove {
    pub index: usize,
    pub text: String,
    pub forward_links: usize,
    pub backward_links: usize,
}

/// Serializable analysis result.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinkographyReport {
    pub embedding: String,
    pub threshold: f64,
    pub k_fraction: f64,
    pub k: usize,
    pub moves: Vec<ReportMove>,
    /// `[i, j, similarity]` triples.
    pub links: Vec<(usize, usize, f64)>,
    pub divergent: Vec<usize>,
    pub convergent: Vec<usize>,
    pub labels: BTreeMap<String, DcLabel>,
    pub summary: Vec<SummaryRow>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisParams {
    pub threshold: f64,
    pub k_fraction: f64,
    pub center_symbol: String,
    pub options: LabelOptions,
}

impl Default for AnalysisParams {
    fn default() -> Self {
        Self {
            threshold: DEFAULT_THRESHOLD,
            k_fraction: DEFAULT_K_FRACTION,
            center_symbol: String::new(),
            options: LabelOptions::default(),
        }
    }
}

/// Embed, link, designate, label and summarize in one pass.
pub fn analyze(
    provider: &dyn EmbeddingProvider,
    moves: &[DesignMove],
    params: &AnalysisParams,
    submitted: &[String],
    confidence: &BTreeMap<String, f64>,
) -> Result<LinkographyReport> {
    check_parameters(params.threshold, params.k_fraction)?;
    if moves.is_empty() {
        return Err(LinkographyError::EmptyTranscript);
    }
    let embedded = embed(provider, moves)?;
    let lg = build_linkograph(&embedded, params.threshold, params.k_fraction)?;
    let labels = label_ppis(&lg, submitted, &params.center_symbol, params.options);
    let summary = summarize(&labels, confidence)?;
    Ok(LinkographyReport {
        embedding: provider.id().to_string(),
        threshold: lg.threshold,
        k_fraction: lg.k_fraction,
        k: lg.k,
        moves: lg
            .moves
            .iter()
            .map(|m| ReportMove {
                index: m.index,
                text: m.text.clone(),
                forward_links: lg.forward_counts[m.index - 1],
                backward_links: lg.backward_counts[m.index - 1],
            })
            .collect(),
        links: lg.links.iter().map(|l| (l.i, l.j, l.similarity)).collect(),
        divergent: lg.divergent,
        convergent: lg.convergent,
        labels,
        summary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(v: &[f64]) -> Vec<f64> {
        normalize(v.to_vec(), 0).unwrap()
    }

    fn mv(index: usize, embedding: Vec<f64>) -> EmbeddedMove {
        EmbeddedMove {
            index,
            text: format!("m{index}"),
            embedding,
        }
    }

    #[test]
    fn segmentation() {
        assert_eq!(segment_moves("I see CDK5. It docks well.").unwrap().len(), 2);
        assert_eq!(segment_moves("one\ntwo\nthree").unwrap().len(), 3);
        assert_eq!(segment_moves("  \n . \n"), Err(LinkographyError::EmptyTranscript));
    }

    #[test]
    fn k_rounding() {
        assert_eq!(k_for(52, 0.10), 5);
        assert_eq!(k_for(43, 0.10), 4);
        assert_eq!(k_for(45, 0.10), 5);
        assert_eq!(k_for(10, 0.10), 1);
        assert_eq!(k_for(1, 0.10), 1);
        assert_eq!(k_for(218, 0.10), 22);
    }

    #[test]
    fn fnv_reference_values() {
        assert_eq!(fnv1a64(b""), 0xcbf29ce484222325);
        assert_eq!(fnv1a64(b"a"), 0xaf63dc4c8601ec8c);
        assert_eq!(fnv1a64(b"foobar"), 0x85944171f73967e8);
    }

    #[test]
    fn embedding_invariances() {
        let e = HashedTermEmbedder;
        let moves = segment_moves("Dock CDK5\ndock cdk5.\nDock CDK5").unwrap();
        let em = embed(&e, &moves).unwrap();
        assert!((cosine(&em[0].embedding, &em[1].embedding) - 1.0).abs() < 1e-12);
        assert!((cosine(&em[0].embedding, &em[2].embedding) - 1.0).abs() < 1e-12);
        let norm: f64 = em[0].embedding.iter().map(|x| x * x).sum::<f64>().sqrt();
        assert!((norm - 1.0).abs() < 1e-9);
    }

    #[test]
    fn disjoint_tokens_are_orthogonal() {
        // Buckets checked collision-free: {kinase, tau} vs {docking, pose}.
        let a = ["kinase", "tau"].map(bucket_of);
        let b = ["docking", "pose"].map(bucket_of);
        assert!(a.iter().all(|x| !b.contains(x)));
        let em = embed(&HashedTermEmbedder, &segment_moves("kinase tau\ndocking pose").unwrap()).unwrap();
        assert_eq!(cosine(&em[0].embedding, &em[1].embedding), 0.0);
    }

    #[test]
    fn three_move_example() {
        let sims = |i: usize, j: usize| match (i, j) {
            (1, 2) => 0.9,
            (1, 3) => 0.2,
            (2, 3) => 0.8,
            _ => unreachable!(),
        };
        let ls = link_structure(3, 0.75, 0.10, sims).unwrap();
        let pairs: Vec<(usize, usize)> = ls.links.iter().map(|l| (l.i, l.j)).collect();
        assert_eq!(pairs, [(1, 2), (2, 3)]);
        assert_eq!(ls.forward_counts, [1, 1, 0]);
        assert_eq!(ls.backward_counts, [0, 1, 1]);
        assert_eq!(ls.k, 1);
        assert_eq!(ls.divergent, [1]);
        assert_eq!(ls.convergent, [2]);
    }

    #[test]
    fn threshold_is_strict() {
        // cos = 0.75 exactly: (3,√7)/4 against (1,0).
        let a = vec![1.0, 0.0];
        let b = unit(&[3.0, 7f64.sqrt()]);
        let lg = build_linkograph(&[mv(1, a), mv(2, b)], 0.75, 0.1).unwrap();
        assert!(lg.links.is_empty());
        assert!(lg.divergent.is_empty() && lg.convergent.is_empty());
    }

    #[test]
    fn single_move_has_no_designations() {
        let em = embed(&HashedTermEmbedder, &segment_moves("only one").unwrap()).unwrap();
        let lg = build_linkograph(&em, 0.75, 0.1).unwrap();
        assert!(lg.links.is_empty());
        assert_eq!(lg.k, 1);
        assert!(lg.divergent.is_empty());
    }

    #[test]
    fn parameter_ranges() {
        let em = embed(&HashedTermEmbedder, &segment_moves("a").unwrap()).unwrap();
        assert_eq!(build_linkograph(&em, 1.5, 0.1).unwrap_err(), LinkographyError::InvalidThreshold(1.5));
        assert!(build_linkograph(&em, 0.0, 0.1).is_err());
        assert!(build_linkograph(&em, 0.5, 0.0).is_err());
    }

    fn labeled(transcript: &str) -> Linkograph {
        let em = embed(&HashedTermEmbedder, &segment_moves(transcript).unwrap()).unwrap();
        build_linkograph(&em, 0.75, 0.5).unwrap()
    }

    #[test]
    fn labels_partition_submissions() {
        // Move 1 links forward to moves 2 and 3 (cos 0.8 and 0.91); moves 2
        // and 3 share only four of their tokens (cos 0.73) and stay unlinked.
        let lg = labeled(
            "check BRSK1 docking score now\ncheck docking score now CDK5\ncheck docking score now BRSK1 TUBB\nunrelated GSK3B remark",
        );
        assert_eq!(lg.k, 2);
        assert_eq!(lg.divergent, [1]);
        assert_eq!(lg.convergent, [2, 3]);
        let submitted: Vec<String> = ["BRSK1", "cdk5", "TUBB", "GSK3B", "MARK2", "brsk1"].map(String::from).to_vec();
        let labels = label_ppis(&lg, &submitted, "MAPT", LabelOptions::default());
        assert_eq!(labels.len(), 5);
        assert_eq!(labels["BRSK1"], DcLabel::BothDC);
        assert_eq!(labels["cdk5"], DcLabel::EitherDC);
        assert_eq!(labels["TUBB"], DcLabel::EitherDC);
        assert_eq!(labels["GSK3B"], DcLabel::NeitherDC);
        assert_eq!(labels["MARK2"], DcLabel::NeitherDC);
        let strict = label_ppis(&lg, &submitted, "MAPT", LabelOptions { require_center: true });
        assert!(strict.values().all(|l| *l == DcLabel::NeitherDC));
    }

    #[test]
    fn summary_statistics() {
        let labels = BTreeMap::from([
            ("A".to_string(), DcLabel::BothDC),
            ("B".to_string(), DcLabel::EitherDC),
            ("C".to_string(), DcLabel::EitherDC),
        ]);
        let conf = BTreeMap::from([("a".to_string(), 6.0), ("B".to_string(), 4.0), ("C".to_string(), 4.0)]);
        let rows = summarize(&labels, &conf).unwrap();
        assert_eq!(rows[0].mean, Some(6.0));
        assert_eq!(rows[0].sd, None);
        assert_eq!(rows[1].sd, Some(0.0));
        assert_eq!(rows[2].n, 0);
        assert_eq!(rows[2].mean, None);
        let bad = BTreeMap::from([("A".to_string(), 9.0)]);
        assert!(summarize(&labels, &bad).is_err());
    }

    #[test]
    fn event_rendering() {
        use chrono::Utc;
        let ev = |seq, action, text: Option<&str>| SessionEvent {
            v: 1,
            seq,
            action,
            text: text.map(String::from),
            ts: Utc::now(),
        };
        let events = vec![
            ev(1, EventAction::ViewSubgraph { index: 3 }, None),
            ev(2, EventAction::Bookmark { target: "9606.B".into() }, None),
            ev(3, EventAction::Note {}, Some("BRSK1 looks good. Check poses!")),
            ev(4, EventAction::Note {}, None),
        ];
        let moves = moves_from_events(&events, &|id: &str| id.trim_start_matches("9606.").to_string());
        let texts: Vec<&str> = moves.iter().map(|m| m.text.as_str()).collect();
        assert_eq!(texts, ["viewed subgraph 3", "bookmarked B", "BRSK1 looks good.", "Check poses!"]);
        assert_eq!(moves[3].index, 4);
    }
}
