//! Bundled hypergraph strings and coordinatizations.
//!
//! Files live in `corpus/` next to this crate's manifest and are embedded at
//! compile time. Each file is an MMP file whose lines are named by `#: id`
//! annotations. An entry is addressed as `file:id`, or by `id` alone when
//! that is unambiguous.

use crate::mmp::{parse_mmp_file, Hypergraph, ParseOptions};

macro_rules! corpus_files {
    ($($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../corpus/", $name, ".mmp")))),*]
    };
}

macro_rules! coord_files {
    ($($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../corpus/", $name, ".coord")))),*]
    };
}

/// `(file stem, contents)` of every bundled MMP file.
pub const FILES: &[(&str, &str)] = corpus_files!(
    "masters",
    "class-24-24",
    "class-60-74",
    "class-60-105",
    "class-300-675",
    "class-148-265",
    "witting",
    "dim3",
    "dim6",
    "dim8",
    "dim16",
    "dim32",
);

/// `(entry id, contents)` of every bundled coordinatization.
pub const COORDINATES: &[(&str, &str)] = coord_files!(
    "18-9c",
    "20-11a",
    "20-11b",
    "24-24c",
    "21-7star",
    "25-16yuoh",
    "36-9star",
    "36-9tri",
);

#[derive(Clone, Debug)]
pub struct Entry {
    pub file: &'static str,
    pub id: String,
    pub hypergraph: Hypergraph,
}

impl Entry {
    /// `n-m` counts declared by the id, e.g. `(26, 13)` for `26-13` or
    /// `22-13/2`.
    pub fn declared_counts(&self) -> Option<(usize, usize)> {
        declared_counts(&self.id)
    }

    pub fn key(&self) -> String {
        format!("{}:{}", self.file, self.id)
    }
}

/// Leading `n-m` of a name like `80-19a` or `20-11/2`.
pub fn declared_counts(id: &str) -> Option<(usize, usize)> {
    let mut parts = id.splitn(2, '-');
    let n: usize = parts.next()?.parse().ok()?;
    let rest = parts.next()?;
    let digits: String = rest.chars().take_while(|c| c.is_ascii_digit()).collect();
    Some((n, digits.parse().ok()?))
}

fn parse_file(file: &'static str, text: &str) -> Vec<Entry> {
    let recs = parse_mmp_file(text, &ParseOptions::default())
        .unwrap_or_else(|e| panic!("bundled corpus file {file} is malformed: {e}"));
    recs.into_iter()
        .map(|r| Entry { file, id: r.name.unwrap_or_else(|| format!("line{}", r.line)), hypergraph: r.hypergraph })
        .collect()
}

/// Every bundled entry, in file order.
pub fn entries() -> Vec<Entry> {
    FILES.iter().flat_map(|(f, t)| parse_file(f, t)).collect()
}

/// Entries of one file.
pub fn file_entries(file: &str) -> Vec<Entry> {
    FILES.iter().filter(|(f, _)| *f == file).flat_map(|(f, t)| parse_file(f, t)).collect()
}

/// Looks up `file:id` or a unique `id`.
pub fn get(key: &str) -> Option<Hypergraph> {
    let (file, id) = match key.split_once(':') {
        Some((f, i)) => (Some(f), i),
        None => (None, key),
    };
    let found: Vec<Entry> = match file {
        Some(f) => file_entries(f),
        None => entries(),
    }
    .into_iter()
    .filter(|e| e.id == id)
    .collect();
    match found.len() {
        1 => found.into_iter().next().map(|e| e.hypergraph),
        _ => None,
    }
}

/// Like [`get`] but panics with the key when missing; for fixtures.
pub fn fixture(key: &str) -> Hypergraph {
    get(key).unwrap_or_else(|| panic!("no unique corpus entry {key}"))
}

/// Raw coordinatization text for an entry id.
pub fn coordinates(id: &str) -> Option<&'static str> {
    COORDINATES.iter().find(|(i, _)| *i == id).map(|(_, t)| *t)
}
