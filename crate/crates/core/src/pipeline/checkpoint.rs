//! Resumable run state: `criticals.mmp` holds the distinct criticals found
//! so far in canonical form, `progress.json` the position in the plan, and
//! `stats.tsv` is written when the run completes.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::mmp::{parse_mmp_file, FileError, Hypergraph, ParseOptions};
use crate::structure::{canonical_form, DedupStore};

use super::{ClassStatistics, Failure};

pub const CRITICALS_FILE: &str = "criticals.mmp";
pub const PROGRESS_FILE: &str = "progress.json";
pub const STATS_FILE: &str = "stats.tsv";

#[derive(Debug, thiserror::Error)]
pub enum CheckpointError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Json { path: String, source: serde_json::Error },
    #[error("{path}: {source}")]
    Corpus { path: String, source: FileError },
    #[error("checkpoint was made for {field} {found:?}, this run has {expected:?}")]
    Mismatch { field: &'static str, expected: String, found: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Progress {
    /// Canonical hash of the master, in hex.
    pub master: String,
    /// Plan fingerprint.
    pub plan: String,
    /// Items consumed so far.
    pub next_item: u64,
    pub ks_items: u64,
    pub ks_classes: u64,
    /// Closure runs: kept-edge lists of the next level to expand.
    pub frontier: Vec<Vec<usize>>,
    pub failures: Vec<Failure>,
    pub complete: bool,
}

impl Progress {
    pub fn new(master: String, plan: String) -> Self {
        Progress { master, plan, next_item: 0, ks_items: 0, ks_classes: 0, frontier: Vec::new(), failures: Vec::new(), complete: false }
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CheckpointError + '_ {
    move |source| CheckpointError::Io { path: path.display().to_string(), source }
}

/// Writes through a temporary file so an interrupted save leaves the
/// previous state intact.
fn write_atomic(path: &Path, contents: &str) -> Result<(), CheckpointError> {
    let tmp = path.with_extension("tmp");
    let mut f = fs::File::create(&tmp).map_err(io_err(&tmp))?;
    f.write_all(contents.as_bytes()).map_err(io_err(&tmp))?;
    f.sync_all().map_err(io_err(&tmp))?;
    fs::rename(&tmp, path).map_err(io_err(path))
}

/// Criticals in canonical order, each preceded by `#: v-e xN` giving its
/// type and multiplicity. The output depends only on the classes and
/// counts, not on insertion order.
pub fn write_criticals(store: &DedupStore, dimension: Option<usize>) -> String {
    let mut out = String::new();
    if let Some(d) = dimension {
        out.push_str(&format!("%dim {d}\n"));
    }
    for (form, count) in store.canonical() {
        let h = form.hypergraph();
        out.push_str(&format!("#: {} x{count}\n{}\n", h.type_name(), form.text()));
    }
    out
}

/// Reads a file written by [`write_criticals`]. Lines without a count are
/// taken once.
pub fn load_criticals(text: &str) -> Result<DedupStore, FileError> {
    let mut store = DedupStore::new();
    for rec in parse_mmp_file(text, &ParseOptions::default())? {
        let count = rec
            .name
            .as_deref()
            .and_then(|n| n.rsplit_once(" x"))
            .and_then(|(_, c)| c.parse().ok())
            .unwrap_or(1);
        let h: Hypergraph = rec.hypergraph;
        store.insert_with_form(canonical_form(&h), h, count);
    }
    Ok(store)
}

pub(super) fn save(dir: &Path, progress: &Progress, store: &DedupStore, dimension: Option<usize>) -> Result<(), CheckpointError> {
    fs::create_dir_all(dir).map_err(io_err(dir))?;
    write_atomic(&dir.join(CRITICALS_FILE), &write_criticals(store, dimension))?;
    let p = dir.join(PROGRESS_FILE);
    let json = serde_json::to_string_pretty(progress).map_err(|source| CheckpointError::Json { path: p.display().to_string(), source })?;
    write_atomic(&p, &(json + "\n"))
}

pub(super) fn write_stats(dir: &Path, stats: &ClassStatistics) -> Result<(), CheckpointError> {
    write_atomic(&dir.join(STATS_FILE), &stats.to_tsv())
}

/// Saved state for a run matching `expected`, or `None` when the directory
/// holds no progress file.
pub(super) fn resume(dir: &Path, expected: &Progress, dimension: Option<usize>) -> Result<Option<(Progress, DedupStore)>, CheckpointError> {
    let p = dir.join(PROGRESS_FILE);
    let text = match fs::read_to_string(&p) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(io_err(&p)(e)),
    };
    let progress: Progress = serde_json::from_str(&text).map_err(|source| CheckpointError::Json { path: p.display().to_string(), source })?;
    for (field, want, got) in [("master", &expected.master, &progress.master), ("plan", &expected.plan, &progress.plan)] {
        if want != got {
            return Err(CheckpointError::Mismatch { field, expected: want.clone(), found: got.clone() });
        }
    }
    let c = dir.join(CRITICALS_FILE);
    let text = fs::read_to_string(&c).map_err(io_err(&c))?;
    let mut store = load_criticals(&text).map_err(|source| CheckpointError::Corpus { path: c.display().to_string(), source })?;
    if dimension.is_some() {
        let mut with_dim = DedupStore::new();
        for (h, n) in store.representatives() {
            let h = h.clone().with_dimension(dimension);
            with_dim.insert_with_form(canonical_form(&h), h, n);
        }
        store = with_dim;
    }
    Ok(Some((progress, store)))
}
