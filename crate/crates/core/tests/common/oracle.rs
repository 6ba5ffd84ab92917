//! Straightforward reference implementations of the linkography rules,
//! written without the library so tests can compare against them. Mirrors
//! fixtures/tools/oracles.py.
#![allow(dead_code)]

use std::collections::BTreeMap;

pub const DIM: u64 = 512;
pub const EPS: f64 = 1e-9;

pub fn fnv1a64(data: &[u8]) -> u64 {
    let mut h: u64 = 0xCBF29CE484222325;
    for &b in data {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001B3);
    }
    h
}

pub fn tokenize(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    for c in text.chars() {
        if c.is_ascii_alphanumeric() {
            cur.push(c.to_ascii_lowercase());
        } else if !cur.is_empty() {
            out.push(std::mem::take(&mut cur));
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

/// Sparse unit vector: bucket → weight.
pub fn embed(text: &str) -> BTreeMap<u64, f64> {
    let mut counts: BTreeMap<u64, f64> = BTreeMap::new();
    for t in tokenize(text) {
        *counts.entry(fnv1a64(t.as_bytes()) % DIM).or_default() += 1.0;
    }
    let norm = counts.values().map(|c| c * c).sum::<f64>().sqrt();
    counts.values_mut().for_each(|c| *c /= norm);
    counts
}

pub fn cosine(u: &BTreeMap<u64, f64>, v: &BTreeMap<u64, f64>) -> f64 {
    u.iter().map(|(b, w)| w * v.get(b).copied().unwrap_or(0.0)).sum()
}

/// A terminator is `!`, `?`, a newline, or a `.` not flanked by digits on
/// both sides; terminators are stripped here, so compare modulo them.
pub fn split_moves(text: &str) -> Vec<String> {
    let chars: Vec<char> = text.chars().collect();
    let mut parts = vec![String::new()];
    for (i, &c) in chars.iter().enumerate() {
        let decimal = c == '.'
            && i > 0
            && chars[i - 1].is_ascii_digit()
            && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit());
        if matches!(c, '!' | '?' | '\n' | '\r') || (c == '.' && !decimal) {
            parts.push(String::new());
        } else {
            parts.last_mut().unwrap().push(c);
        }
    }
    parts
        .into_iter()
        .map(|p| p.trim().to_string())
        .filter(|p| p.chars().any(|c| c.is_ascii_alphanumeric()))
        .collect()
}

/// Round-half-up of `fraction * n` in exact rational arithmetic for
/// fractions with at most four decimals, never below one.
pub fn k_for(n: usize, fraction_ten_thousandths: u64) -> usize {
    let scaled = n as u64 * fraction_ten_thousandths; // k * 10000
    (((scaled + 5000) / 10000) as usize).max(1)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Oracle {
    pub links: Vec<(usize, usize)>,
    pub k: usize,
    pub divergent: Vec<usize>,
    pub convergent: Vec<usize>,
    pub forward: Vec<usize>,
    pub backward: Vec<usize>,
}

/// Quadratic scan over all pairs, given a similarity on 1-based indices.
pub fn brute_force(n: usize, threshold: f64, k: usize, sim: impl Fn(usize, usize) -> f64) -> Oracle {
    let mut links = Vec::new();
    let mut forward = vec![0; n];
    let mut backward = vec![0; n];
    for i in 1..=n {
        for j in i + 1..=n {
            if sim(i, j) > threshold + EPS {
                links.push((i, j));
                forward[i - 1] += 1;
                backward[j - 1] += 1;
            }
        }
    }
    let top = |counts: &[usize]| {
        let mut ranked: Vec<(std::cmp::Reverse<usize>, usize)> = (1..=n)
            .filter(|&i| counts[i - 1] > 0)
            .map(|i| (std::cmp::Reverse(counts[i - 1]), i))
            .collect();
        ranked.sort();
        let mut chosen: Vec<usize> = ranked.into_iter().take(k).map(|(_, i)| i).collect();
        chosen.sort();
        chosen
    };
    Oracle {
        k,
        divergent: top(&forward),
        convergent: top(&backward),
        links,
        forward,
        backward,
    }
}

pub fn text_linkograph(moves: &[String], threshold: f64, k: usize) -> Oracle {
    let vecs: Vec<_> = moves.iter().map(|m| embed(m)).collect();
    brute_force(moves.len(), threshold, k, |i, j| cosine(&vecs[i - 1], &vecs[j - 1]))
}

pub fn mentions(mv: &str, symbol: &str) -> bool {
    let (toks, needle) = (tokenize(mv), tokenize(symbol));
    !needle.is_empty() && toks.windows(needle.len()).any(|w| w == needle.as_slice())
}

/// "BothDC" / "EitherDC" / "NeitherDC".
pub fn label(moves: &[String], lg: &Oracle, symbol: &str) -> &'static str {
    let d = lg.divergent.iter().any(|&i| mentions(&moves[i - 1], symbol));
    let c = lg.convergent.iter().any(|&i| mentions(&moves[i - 1], symbol));
    match (d, c) {
        (true, true) => "BothDC",
        (false, false) => "NeitherDC",
        _ => "EitherDC",
    }
}

/// `target,confidence` rows.
pub fn read_submitted(text: &str) -> Vec<(String, Option<f64>)> {
    text.lines()
        .filter_map(|line| {
            let cols: Vec<&str> = line.split(',').map(str::trim).collect();
            if cols[0].is_empty() || cols[0].eq_ignore_ascii_case("target") {
                return None;
            }
            Some((cols[0].to_string(), cols.get(1).and_then(|c| c.parse().ok())))
        })
        .collect()
}
