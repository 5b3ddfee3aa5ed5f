//! Noncontextual 0-1 assignments.
//!
//! A hypergraph is a KS set when no assignment puts exactly one 1 in every
//! edge. That is an exact-cover question (vertices are rows, edges are
//! columns), searched here with bit-set backtracking that always branches on
//! the uncovered edge with the fewest remaining candidates.

mod exact;
mod maxones;

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bits::BitSet;
use crate::mmp::Hypergraph;

pub use exact::KsSolver;
pub use maxones::{max_ones_witness, max_ones_witness_limited, MaxOnes};

/// A 0-1 valuation given by the vertices that receive 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Assignment {
    /// Sorted vertex indices assigned 1.
    pub ones: Vec<usize>,
}

impl Assignment {
    pub fn new(mut ones: Vec<usize>) -> Self {
        ones.sort_unstable();
        ones.dedup();
        Assignment { ones }
    }

    pub fn labels(&self, h: &Hypergraph) -> Vec<String> {
        self.ones.iter().map(|&v| h.label(v).to_string()).collect()
    }

    /// Number of 1s in each edge.
    pub fn edge_counts(&self, h: &Hypergraph) -> Vec<usize> {
        let mut one = vec![false; h.n_vertices()];
        for &v in &self.ones {
            one[v] = true;
        }
        h.edges().iter().map(|e| e.iter().filter(|&&v| one[v]).count()).collect()
    }

    /// True when no edge holds two 1s.
    pub fn is_independent(&self, h: &Hypergraph) -> bool {
        self.edge_counts(h).iter().all(|&c| c <= 1)
    }

    /// True when every edge holds exactly one 1.
    pub fn is_full(&self, h: &Hypergraph) -> bool {
        self.edge_counts(h).iter().all(|&c| c == 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KsVerdict {
    pub is_ks: bool,
    /// Present exactly when the hypergraph is not KS.
    pub witness: Option<Assignment>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalityReport {
    pub is_critical: bool,
    /// Edges whose removal leaves a KS set.
    pub removable_edges: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolverError {
    #[error("hypergraph is not a KS set")]
    NotKs,
    #[error("search budget exhausted")]
    Timeout,
}

/// Optional wall-clock budget for a search.
#[derive(Clone, Copy, Debug, Default)]
pub struct Limits {
    pub deadline: Option<Instant>,
}

impl Limits {
    pub fn none() -> Self {
        Limits { deadline: None }
    }

    pub fn within(d: std::time::Duration) -> Self {
        Limits { deadline: Some(Instant::now() + d) }
    }

    pub fn expired(&self) -> bool {
        self.deadline.is_some_and(|d| Instant::now() >= d)
    }
}

/// Decides the KS property. Deterministic: the same input always yields
/// the same witness.
pub fn is_ks(h: &Hypergraph) -> KsVerdict {
    is_ks_limited(h, Limits::none()).expect("unlimited search cannot time out")
}

pub fn is_ks_limited(h: &Hypergraph, limits: Limits) -> Result<KsVerdict, SolverError> {
    let s = KsSolver::new(h);
    let w = s.find_cover(&s.all_edges(), limits)?;
    Ok(KsVerdict { is_ks: w.is_none(), witness: w.map(Assignment::new) })
}

/// Tests whether removing any single edge keeps the KS property.
pub fn criticality(h: &Hypergraph) -> Result<CriticalityReport, SolverError> {
    criticality_limited(h, Limits::none())
}

pub fn criticality_limited(h: &Hypergraph, limits: Limits) -> Result<CriticalityReport, SolverError> {
    let s = KsSolver::new(h);
    let mut active = s.all_edges();
    if s.find_cover(&active, limits)?.is_some() {
        return Err(SolverError::NotKs);
    }
    let mut removable = Vec::new();
    for i in 0..h.n_edges() {
        active.remove(i);
        if s.find_cover(&active, limits)?.is_none() {
            removable.push(i);
        }
        active.insert(i);
    }
    Ok(CriticalityReport { is_critical: removable.is_empty(), removable_edges: removable })
}

/// Edge-removal order used by [`reduce_to_critical`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReduceMode {
    /// Always remove the lowest-index removable edge.
    Deterministic,
    /// Try edges in a seed-determined random order.
    Random { seed: u64 },
}

/// Removes edges while the set stays KS, until it is critical.
///
/// One pass suffices: an edge that cannot be removed at some point can
/// never become removable later, because subsets of non-KS sets are non-KS.
pub fn reduce_to_critical(h: &Hypergraph, mode: ReduceMode) -> Result<Hypergraph, SolverError> {
    reduce_to_critical_limited(h, mode, Limits::none())
}

pub fn reduce_to_critical_limited(h: &Hypergraph, mode: ReduceMode, limits: Limits) -> Result<Hypergraph, SolverError> {
    let s = KsSolver::new(h);
    let active = s.reduce(&s.all_edges(), mode, limits)?;
    Ok(h.retain_edges(|i| active.contains(i)))
}

impl KsSolver {
    /// Reduces the active edge set to a critical one.
    pub fn reduce(&self, start: &BitSet, mode: ReduceMode, limits: Limits) -> Result<BitSet, SolverError> {
        let mut active = start.clone();
        if self.find_cover(&active, limits)?.is_some() {
            return Err(SolverError::NotKs);
        }
        let mut order: Vec<usize> = active.iter().collect();
        if let ReduceMode::Random { seed } = mode {
            order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        }
        for i in order {
            active.remove(i);
            if self.find_cover(&active, limits)?.is_some() {
                active.insert(i);
            }
        }
        Ok(active)
    }
}
