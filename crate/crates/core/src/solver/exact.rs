use crate::bits::BitSet;
use crate::mmp::Hypergraph;

use super::{Limits, SolverError};

/// Precomputed bit masks for repeated exact-cover queries on one
/// hypergraph, each restricted to a subset of "active" edges.
pub struct KsSolver {
    n: usize,
    m: usize,
    /// Vertices of each edge.
    edge_vertices: Vec<BitSet>,
    /// Edges of each vertex.
    incident: Vec<Vec<usize>>,
}

struct Search<'a> {
    s: &'a KsSolver,
    active: &'a BitSet,
    limits: Limits,
    nodes: u64,
    chosen: Vec<usize>,
}

impl KsSolver {
    pub fn new(h: &Hypergraph) -> Self {
        let n = h.n_vertices();
        let m = h.n_edges();
        let edge_vertices = h.edges().iter().map(|e| BitSet::from_indices(n, e.iter().copied())).collect();
        let incident = (0..n).map(|v| h.incident(v).to_vec()).collect();
        KsSolver { n, m, edge_vertices, incident }
    }

    pub fn n_edges(&self) -> usize {
        self.m
    }

    pub fn all_edges(&self) -> BitSet {
        BitSet::full(self.m)
    }

    /// Finds vertices meeting every active edge exactly once, or `None`
    /// when the active edges form a KS set.
    ///
    /// A vertex that lies in a single active edge can always take the 1 of
    /// that edge when no other vertex does, so such edges only need "at
    /// most one" and their private vertices are filled in at the end.
    pub fn find_cover(&self, active: &BitSet, limits: Limits) -> Result<Option<Vec<usize>>, SolverError> {
        let mut live = BitSet::new(self.n);
        let mut slack = BitSet::new(self.n);
        for e in active.iter() {
            live.or_assign(&self.edge_vertices[e]);
        }
        for v in live.iter() {
            if self.incident[v].iter().filter(|&&f| active.contains(f)).count() == 1 {
                slack.insert(v);
            }
        }
        let mut hard = active.clone();
        for e in active.iter() {
            if self.edge_vertices[e].intersects(&slack) {
                hard.remove(e);
            }
        }
        live.and_not_assign(&slack);
        let mut search = Search { s: self, active, limits, nodes: 0, chosen: Vec::new() };
        if !search.run(hard, live)? {
            return Ok(None);
        }
        let mut chosen = search.chosen;
        let mut met = BitSet::new(self.m);
        for &v in &chosen {
            for &f in &self.incident[v] {
                met.insert(f);
            }
        }
        for e in active.iter() {
            if !met.contains(e) {
                let v = self.edge_vertices[e].first_common(&slack).expect("soft edge has a private vertex");
                chosen.push(v);
            }
        }
        Ok(Some(chosen))
    }

    /// True when the active edges form a KS set.
    pub fn is_ks(&self, active: &BitSet) -> bool {
        self.find_cover(active, Limits::none()).expect("unlimited").is_none()
    }
}

impl Search<'_> {
    fn run(&mut self, uncovered: BitSet, mut live: BitSet) -> Result<bool, SolverError> {
        self.nodes += 1;
        if self.nodes & 0xfff == 0 && self.limits.expired() {
            return Err(SolverError::Timeout);
        }
        // Most constrained uncovered edge.
        let mut best = None;
        let mut best_count = usize::MAX;
        for e in uncovered.iter() {
            let c = self.s.edge_vertices[e].intersection_count(&live);
            if c < best_count {
                best_count = c;
                best = Some(e);
                if c <= 1 {
                    break;
                }
            }
        }
        let Some(e) = best else {
            return Ok(true);
        };
        if best_count == 0 {
            return Ok(false);
        }
        let mut candidates = self.s.edge_vertices[e].clone();
        candidates.and_assign(&live);
        for v in candidates.iter() {
            let mut next_uncovered = uncovered.clone();
            let mut next_live = live.clone();
            for &f in &self.s.incident[v] {
                if self.active.contains(f) {
                    next_uncovered.remove(f);
                    next_live.and_not_assign(&self.s.edge_vertices[f]);
                }
            }
            self.chosen.push(v);
            if self.run(next_uncovered, next_live)? {
                return Ok(true);
            }
            self.chosen.pop();
            // Later branches at this node exclude v.
            live.remove(v);
        }
        Ok(false)
    }
}
