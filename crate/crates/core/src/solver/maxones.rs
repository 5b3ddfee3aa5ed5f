use crate::bits::BitSet;
use crate::mmp::Hypergraph;

use super::{Assignment, KsSolver, Limits, SolverError};

/// An assignment with at most one 1 per edge that meets as many edges as
/// possible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaxOnes {
    pub ones: Assignment,
    /// Number of edges holding exactly one 1.
    pub satisfied: usize,
}

/// Exact branch and bound over independent vertex sets. For a non-KS set
/// this is a full assignment; for a KS set at least one edge stays empty.
pub fn max_ones_witness(h: &Hypergraph) -> MaxOnes {
    max_ones_witness_limited(h, Limits::none()).expect("unlimited search cannot time out")
}

pub fn max_ones_witness_limited(h: &Hypergraph, limits: Limits) -> Result<MaxOnes, SolverError> {
    let solver = KsSolver::new(h);
    if let Some(w) = solver.find_cover(&solver.all_edges(), limits)? {
        return Ok(MaxOnes { ones: Assignment::new(w), satisfied: h.n_edges() });
    }
    let n = h.n_vertices();
    let m = h.n_edges();
    let edge_vertices: Vec<BitSet> = h.edges().iter().map(|e| BitSet::from_indices(n, e.iter().copied())).collect();
    let mut bb = BranchBound {
        h,
        edge_vertices,
        best: 0,
        best_ones: Vec::new(),
        chosen: Vec::new(),
        limits,
        nodes: 0,
    };
    bb.greedy();
    bb.run(BitSet::full(m), BitSet::full(n), 0)?;
    Ok(MaxOnes { satisfied: bb.best, ones: Assignment::new(bb.best_ones) })
}

struct BranchBound<'a> {
    h: &'a Hypergraph,
    edge_vertices: Vec<BitSet>,
    best: usize,
    best_ones: Vec<usize>,
    chosen: Vec<usize>,
    limits: Limits,
    nodes: u64,
}

impl BranchBound<'_> {
    /// Picks vertices in index order while they stay independent.
    fn greedy(&mut self) {
        let n = self.h.n_vertices();
        let mut live = BitSet::full(n);
        let mut ones = Vec::new();
        let mut covered = BitSet::new(self.h.n_edges());
        for v in 0..n {
            if !live.contains(v) {
                continue;
            }
            ones.push(v);
            for &f in self.h.incident(v) {
                covered.insert(f);
                live.and_not_assign(&self.edge_vertices[f]);
            }
        }
        self.best = covered.count();
        self.best_ones = ones;
    }

    fn select(&self, v: usize, open: &mut BitSet, live: &mut BitSet) -> usize {
        let mut gained = 0;
        for &f in self.h.incident(v) {
            if open.contains(f) {
                open.remove(f);
                gained += 1;
            }
            live.and_not_assign(&self.edge_vertices[f]);
        }
        gained
    }

    fn run(&mut self, mut open: BitSet, live: BitSet, covered: usize) -> Result<(), SolverError> {
        self.nodes += 1;
        if self.nodes & 0xfff == 0 && self.limits.expired() {
            return Err(SolverError::Timeout);
        }
        // Drop open edges that can no longer be met; count the rest.
        let mut reachable = 0;
        let mut pick = None;
        let mut pick_count = usize::MAX;
        for e in open.clone().iter() {
            let c = self.edge_vertices[e].intersection_count(&live);
            if c == 0 {
                open.remove(e);
            } else {
                reachable += 1;
                if c < pick_count {
                    pick_count = c;
                    pick = Some(e);
                }
            }
        }
        if covered > self.best {
            self.best = covered;
            self.best_ones = self.chosen.clone();
        }
        if covered + reachable <= self.best {
            return Ok(());
        }
        let Some(e) = pick else {
            return Ok(());
        };
        let mut candidates = self.edge_vertices[e].clone();
        candidates.and_assign(&live);
        for v in candidates.iter() {
            let mut o = open.clone();
            let mut l = live.clone();
            let gained = self.select(v, &mut o, &mut l);
            self.chosen.push(v);
            self.run(o, l, covered + gained)?;
            self.chosen.pop();
        }
        // Leave e without a 1.
        let mut o = open;
        o.remove(e);
        let mut l = live;
        l.and_not_assign(&self.edge_vertices[e]);
        self.run(o, l, covered)
    }
}
