//! Tables of non-isomorphic criticals per `(vertices, edges)` type.

use std::fmt::Write as _;

use crate::mmp::Hypergraph;
use crate::parity::ParityStatistics;
use crate::structure::DedupStore;

pub const TSV_HEADER: &str = "vertices\tedges\tcount\tparity_count";

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClassStatistics {
    /// `(vertices, edges) -> (classes, classes with a parity proof)`.
    pub table: ParityStatistics,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("stats line {line}: {reason}")]
pub struct StatsError {
    pub line: usize,
    pub reason: String,
}

impl ClassStatistics {
    /// One count per class of `store`, regardless of multiplicity.
    pub fn from_store(store: &DedupStore) -> Self {
        Self::from_sets(store.representatives().map(|(h, _)| h))
    }

    pub fn from_sets<'a>(sets: impl IntoIterator<Item = &'a Hypergraph>) -> Self {
        ClassStatistics { table: crate::parity::parity_statistics(sets) }
    }

    pub fn count(&self, vertices: usize, edges: usize) -> usize {
        self.table.by_type.get(&(vertices, edges)).map_or(0, |c| c.0)
    }

    pub fn total(&self) -> usize {
        self.table.total().0
    }

    pub fn parity_fraction(&self) -> Option<f64> {
        self.table.fraction()
    }

    /// Header, one row per type in increasing order, and a `total` row.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        out.push_str(TSV_HEADER);
        out.push('\n');
        for (&(v, e), &(n, p)) in &self.table.by_type {
            let _ = writeln!(out, "{v}\t{e}\t{n}\t{p}");
        }
        let (n, p) = self.table.total();
        let _ = writeln!(out, "total\t\t{n}\t{p}");
        out
    }

    /// Reads a table written by [`to_tsv`](Self::to_tsv) and checks its
    /// footer.
    pub fn from_tsv(text: &str) -> Result<Self, StatsError> {
        let err = |line, reason: &str| StatsError { line, reason: reason.to_string() };
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        match lines.next() {
            Some((_, h)) if h == TSV_HEADER => {}
            _ => return Err(err(1, "missing header")),
        }
        let mut stats = ClassStatistics::default();
        let mut footer = None;
        for (no, line) in lines {
            if footer.is_some() {
                return Err(err(no, "data after total row"));
            }
            let f: Vec<&str> = line.split('\t').collect();
            if f.len() != 4 {
                return Err(err(no, "expected four columns"));
            }
            let num = |s: &str| s.parse::<usize>().map_err(|_| err(no, "not a count"));
            if f[0] == "total" {
                footer = Some((num(f[2])?, num(f[3])?));
                continue;
            }
            stats.table.by_type.insert((num(f[0])?, num(f[1])?), (num(f[2])?, num(f[3])?));
        }
        match footer {
            Some(t) if t == stats.table.total() => Ok(stats),
            Some(_) => Err(err(0, "total row does not match")),
            None => Err(err(0, "missing total row")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::fixture;

    #[test]
    fn tsv_round_trip() {
        let sets: Vec<Hypergraph> =
            ["class-24-24:18-9", "class-24-24:20-11/1", "class-24-24:20-11/2"].iter().map(|k| fixture(k)).collect();
        let s = ClassStatistics::from_sets(&sets);
        assert_eq!(s.count(20, 11), 2);
        let tsv = s.to_tsv();
        assert!(tsv.ends_with("total\t\t3\t3\n"));
        assert_eq!(ClassStatistics::from_tsv(&tsv).unwrap(), s);
        assert!(ClassStatistics::from_tsv(&tsv.replace("total\t\t3", "total\t\t4")).is_err());
    }
}
