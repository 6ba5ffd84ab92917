#![allow(dead_code)]

use std::fmt::Write as _;
use std::path::PathBuf;

use happier_core::ingest::{ingest_links, InteractionStore};
use rand::Rng;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

/// Scratch directory on tmpfs when available: session tests rewrite small
/// files thousands of times and some disks flush on every replace.
pub fn scratch_dir() -> tempfile::TempDir {
    let shm = std::path::Path::new("/dev/shm");
    if shm.is_dir() {
        if let Ok(dir) = tempfile::tempdir_in(shm) {
            return dir;
        }
    }
    tempfile::tempdir().expect("temp dir")
}

pub fn read_fixture(name: &str) -> String {
    std::fs::read_to_string(fixture(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub const CENTER: &str = "9606.C";

pub fn protein_id(i: usize) -> String {
    format!("9606.P{i:05}")
}

/// Random star around `9606.C` with `n` neighbors plus some cross edges.
/// Scores are drawn from a narrow band so ties are common.
pub fn random_store(rng: &mut impl Rng, n: usize) -> InteractionStore {
    let mut links = String::from("protein1 protein2 combined_score\n");
    let mut info = String::from("#string_protein_id\tpreferred_name\tprotein_size\tannotation\n");
    let _ = writeln!(info, "{CENTER}\tCTR\t100\tcenter");
    for i in 0..n {
        let id = protein_id(i);
        let _ = writeln!(info, "{id}\tG{:05}\t100\tneighbor", rng.random_range(0..100_000));
        let _ = writeln!(links, "{CENTER} {id} {}", rng.random_range(0..=1000));
    }
    for _ in 0..n {
        let (a, b) = (rng.random_range(0..n), rng.random_range(0..n));
        let _ = writeln!(links, "{} {} {}", protein_id(a), protein_id(b), rng.random_range(0..=1000));
    }
    ingest_links(&links, &info).expect("generated files are well formed").0
}
pub mod oracle;
