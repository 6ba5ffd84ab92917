//! Readers for the two expert-supplied structure files: a PDB file for the
//! initial protein and a V2000 molfile (SDF) for the reference ligand.
//!
//! Only atom identity and coordinates are extracted from PDB records. The SDF
//! reader keeps the property block as an opaque tag → text map.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChemError {
    #[error("structure contains no ATOM/HETATM records")]
    EmptyStructure,
    #[error("malformed record at line {0}")]
    MalformedRecord(usize),
    #[error("counts line declares {declared_atoms} atoms and {declared_bonds} bonds, found {found_atoms} atoms and {found_bonds} bonds")]
    CountsMismatch {
        declared_atoms: usize,
        declared_bonds: usize,
        found_atoms: usize,
        found_bonds: usize,
    },
}

pub type Result<T> = std::result::Result<T, ChemError>;

/// One ATOM or HETATM record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AtomRecord {
    pub serial: u32,
    pub name: String,
    pub res_name: String,
    pub chain_id: char,
    pub res_seq: i32,
    pub element: String,
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub hetero: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProteinStructure {
    pub name: String,
    pub atoms: Vec<AtomRecord>,
    pub chain_count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LigandAtom {
    pub element: String,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

/// Bond between two 1-based atom indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bond {
    pub a: usize,
    pub b: usize,
    pub order: u8,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LigandStructure {
    pub name: String,
    pub atoms: Vec<LigandAtom>,
    pub bonds: Vec<Bond>,
    #[serde(default)]
    pub properties: BTreeMap<String, String>,
    #[serde(default)]
    pub warnings: Vec<String>,
}

impl LigandStructure {
    pub fn coordinates(&self) -> Vec<[f64; 3]> {
        self.atoms.iter().map(|a| [a.x, a.y, a.z]).collect()
    }
}

/// Byte-range column slice, 1-based inclusive like the format documentation.
/// Short lines yield the available prefix (possibly empty).
fn columns(line: &str, first: usize, last: usize) -> &str {
    let start = (first - 1).min(line.len());
    let end = last.min(line.len());
    line.get(start..end).unwrap_or("")
}

fn parse_coord(line: &str, first: usize, last: usize, line_no: usize) -> Result<f64> {
    let v: f64 = columns(line, first, last)
        .trim()
        .parse()
        .map_err(|_| ChemError::MalformedRecord(line_no))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(ChemError::MalformedRecord(line_no))
    }
}

fn infer_element(atom_name: &str) -> String {
    atom_name
        .chars()
        .find(|c| c.is_ascii_alphabetic())
        .map(|c| c.to_ascii_uppercase().to_string())
        .unwrap_or_default()
}

/// Parse PDB text. ATOM and HETATM records are collected until an END
/// record; every other record type is skipped. The structure name is the
/// HEADER id code when one is present.
pub fn parse_pdb(content: &str) -> Result<ProteinStructure> {
    let mut atoms = Vec::new();
    let mut serials = HashSet::new();
    let mut chains = BTreeSet::new();
    let mut name = String::new();

    for (idx, raw) in content.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim_end_matches('\r');
        let record = columns(line, 1, 6).trim_end();
        match record {
            "HEADER" if name.is_empty() => name = columns(line, 63, 66).trim().to_string(),
            "END" => break,
            "ATOM" | "HETATM" => {
                if !line.is_ascii() {
                    return Err(ChemError::MalformedRecord(line_no));
                }
                let serial: u32 = columns(line, 7, 11)
                    .trim()
                    .parse()
                    .map_err(|_| ChemError::MalformedRecord(line_no))?;
                if !serials.insert(serial) {
                    return Err(ChemError::MalformedRecord(line_no));
                }
                let x = parse_coord(line, 31, 38, line_no)?;
                let y = parse_coord(line, 39, 46, line_no)?;
                let z = parse_coord(line, 47, 54, line_no)?;
                let atom_name = columns(line, 13, 16).trim().to_string();
                let mut element = columns(line, 77, 78).trim().to_string();
                if element.is_empty() {
                    element = infer_element(&atom_name);
                }
                let chain_id = columns(line, 22, 22).chars().next().unwrap_or(' ');
                chains.insert(chain_id);
                let res_seq = columns(line, 23, 26).trim().parse().unwrap_or(0);
                atoms.push(AtomRecord {
                    serial,
                    name: atom_name,
                    res_name: columns(line, 18, 20).trim().to_string(),
                    chain_id,
                    res_seq,
                    element,
                    x,
                    y,
                    z,
                    hetero: record == "HETATM",
                });
            }
            _ => {}
        }
    }

    if atoms.is_empty() {
        return Err(ChemError::EmptyStructure);
    }
    Ok(ProteinStructure {
        name,
        atoms,
        chain_count: chains.len(),
    })
}

/// Debug emitter: fixed-width ATOM/HETATM records followed by END. Not
/// byte-exact with the original input.
pub fn write_pdb(structure: &ProteinStructure) -> String {
    let mut out = String::new();
    if !structure.name.is_empty() {
        let _ = writeln!(out, "HEADER    {:<52}{:<4}", "", structure.name);
    }
    for a in &structure.atoms {
        // Four-character names start in column 13, shorter ones in column 14.
        let name = if a.name.len() >= 4 {
            a.name.clone()
        } else {
            format!(" {}", a.name)
        };
        let _ = writeln!(
            out,
            "{:<6}{:>5} {:<4} {:>3} {}{:>4}    {:>8.3}{:>8.3}{:>8.3}{:>6.2}{:>6.2}          {:>2}",
            if a.hetero { "HETATM" } else { "ATOM" },
            a.serial,
            name,
            a.res_name,
            a.chain_id,
            a.res_seq,
            a.x,
            a.y,
            a.z,
            1.0,
            0.0,
            a.element
        );
    }
    out.push_str("END\n");
    out
}

fn parse_count(field: &str, line_no: usize) -> Result<usize> {
    field
        .trim()
        .parse()
        .map_err(|_| ChemError::MalformedRecord(line_no))
}

fn parse_atom_line(line: &str) -> Option<LigandAtom> {
    let mut fields = line.split_whitespace();
    let x = fields.next()?.parse::<f64>().ok()?;
    let y = fields.next()?.parse::<f64>().ok()?;
    let z = fields.next()?.parse::<f64>().ok()?;
    let element = fields.next()?;
    if !(x.is_finite() && y.is_finite() && z.is_finite()) {
        return None;
    }
    if element.is_empty() || !element.chars().all(|c| c.is_ascii_alphabetic() || c == '*') {
        return None;
    }
    Some(LigandAtom {
        element: element.to_string(),
        x,
        y,
        z,
    })
}

fn parse_bond_line(line: &str) -> Option<(usize, usize, u8)> {
    // V2000 bond lines are three-character integer columns; fall back to
    // whitespace splitting for writers that run them together loosely.
    let fixed = (
        columns(line, 1, 3).trim().parse().ok(),
        columns(line, 4, 6).trim().parse().ok(),
        columns(line, 7, 9).trim().parse().ok(),
    );
    if let (Some(a), Some(b), Some(o)) = fixed {
        return Some((a, b, o));
    }
    let mut fields = line.split_whitespace();
    Some((
        fields.next()?.parse().ok()?,
        fields.next()?.parse().ok()?,
        fields.next()?.parse().ok()?,
    ))
}

/// Parse the first molecule of an SDF / V2000 molfile.
pub fn parse_sdf(content: &str) -> Result<LigandStructure> {
    let lines: Vec<&str> = content.lines().map(|l| l.trim_end_matches('\r')).collect();
    if lines.len() < 4 {
        return Err(ChemError::MalformedRecord(lines.len() + 1));
    }
    let name = lines[0].trim().to_string();

    let counts = lines[3];
    if counts.contains("V3000") {
        return Err(ChemError::MalformedRecord(4));
    }
    let (declared_atoms, declared_bonds) = match (
        parse_count(columns(counts, 1, 3), 4),
        parse_count(columns(counts, 4, 6), 4),
    ) {
        (Ok(a), Ok(b)) => (a, b),
        _ => {
            let mut fields = counts.split_whitespace();
            (
                parse_count(fields.next().unwrap_or(""), 4)?,
                parse_count(fields.next().unwrap_or(""), 4)?,
            )
        }
    };

    // Connection table runs until the first "M  " line, the record separator
    // or the end of input.
    let table_end = lines[4..]
        .iter()
        .position(|l| l.starts_with("M  ") || l.starts_with("$$$$"))
        .map(|p| p + 4)
        .unwrap_or(lines.len());
    let table = &lines[4..table_end];

    let mut atoms = Vec::new();
    let mut pos = 0;
    while pos < table.len() {
        match parse_atom_line(table[pos]) {
            Some(atom) => atoms.push(atom),
            None => break,
        }
        pos += 1;
    }
    let mut raw_bonds = Vec::new();
    for (offset, line) in table[pos..].iter().enumerate() {
        let line_no = 4 + pos + offset + 1;
        if line.trim().is_empty() {
            continue;
        }
        let bond = parse_bond_line(line).ok_or(ChemError::MalformedRecord(line_no))?;
        raw_bonds.push((bond, line_no));
    }

    if atoms.len() != declared_atoms || raw_bonds.len() != declared_bonds {
        return Err(ChemError::CountsMismatch {
            declared_atoms,
            declared_bonds,
            found_atoms: atoms.len(),
            found_bonds: raw_bonds.len(),
        });
    }

    let mut bonds = Vec::with_capacity(raw_bonds.len());
    for ((a, b, order), line_no) in raw_bonds {
        let valid_index = |i: usize| (1..=atoms.len()).contains(&i);
        if !valid_index(a) || !valid_index(b) || a == b || !(1..=4).contains(&order) {
            return Err(ChemError::MalformedRecord(line_no));
        }
        bonds.push(Bond { a, b, order });
    }

    let mut properties = BTreeMap::new();
    let mut warnings = Vec::new();
    let mut i = table_end;
    let mut saw_end = false;
    while i < lines.len() {
        let line = lines[i];
        if line.starts_with("$$$$") {
            if lines[i + 1..].iter().any(|l| !l.trim().is_empty()) {
                warnings.push("multiple molecules present; only the first was read".to_string());
            }
            break;
        }
        if line.starts_with("M  END") {
            saw_end = true;
        } else if saw_end && line.starts_with('>') {
            if let (Some(open), Some(close)) = (line.find('<'), line.rfind('>')) {
                if close > open {
                    let key = line[open + 1..close].to_string();
                    let mut value = Vec::new();
                    i += 1;
                    while i < lines.len() && !lines[i].trim().is_empty() && !lines[i].starts_with("$$$$") {
                        value.push(lines[i]);
                        i += 1;
                    }
                    properties.insert(key, value.join("\n"));
                    continue;
                }
            }
        }
        i += 1;
    }

    Ok(LigandStructure {
        name,
        atoms,
        bonds,
        properties,
        warnings,
    })
}

/// Debug emitter for a single V2000 molfile, property block included.
pub fn write_sdf(ligand: &LigandStructure) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}", ligand.name);
    out.push_str("  happier\n\n");
    let _ = writeln!(
        out,
        "{:>3}{:>3}  0  0  0  0  0  0  0  0999 V2000",
        ligand.atoms.len(),
        ligand.bonds.len()
    );
    for a in &ligand.atoms {
        let _ = writeln!(
            out,
            "{:>10.4}{:>10.4}{:>10.4} {:<3} 0  0  0  0  0  0  0  0  0  0  0  0",
            a.x, a.y, a.z, a.element
        );
    }
    for b in &ligand.bonds {
        let _ = writeln!(out, "{:>3}{:>3}{:>3}  0", b.a, b.b, b.order);
    }
    out.push_str("M  END\n");
    for (k, v) in &ligand.properties {
        let _ = writeln!(out, ">  <{k}>\n{v}\n");
    }
    out.push_str("$$$$\n");
    out
}
