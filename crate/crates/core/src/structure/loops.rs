//! Maximal loops.
//!
//! A loop of length `k >= 3` is a cyclic sequence of distinct edges
//! `e1..ek` with distinct linking vertices `vi` in `ei ∩ e(i+1)`, where
//! edges that are not cyclically adjacent share no vertex. In the
//! edge-intersection graph this is an induced cycle. The chord-free
//! condition is what makes the 24-24 class top out at hexagons: without it
//! the 18-9 set already closes a 9-edge loop.

use crate::bits::BitSet;
use crate::mmp::Hypergraph;
use crate::solver::Limits;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopReport {
    /// Edges of the loop in cyclic order; empty when there is no loop.
    pub edges: Vec<usize>,
    /// `vertices[i]` links `edges[i]` and `edges[(i + 1) % k]`.
    pub vertices: Vec<usize>,
    /// False when the time budget ran out; `len()` is then a lower bound.
    pub exact: bool,
}

impl LoopReport {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

/// Edge-intersection graph as bit rows.
fn intersection_graph(h: &Hypergraph) -> Vec<BitSet> {
    let m = h.n_edges();
    let mut adj = vec![BitSet::new(m); m];
    for v in 0..h.n_vertices() {
        let inc = h.incident(v);
        for &a in inc {
            for &b in inc {
                if a != b {
                    adj[a].insert(b);
                }
            }
        }
    }
    adj
}

fn shared(h: &Hypergraph, a: usize, b: usize) -> Vec<usize> {
    h.edge(a).iter().copied().filter(|v| h.edge(b).contains(v)).collect()
}

/// Linking vertices for edges in cyclic order, if distinct ones exist.
/// For chord-free cycles of length four or more any choice is distinct;
/// only triangles need a real matching.
pub fn linking_vertices(h: &Hypergraph, cycle: &[usize]) -> Option<Vec<usize>> {
    let k = cycle.len();
    let options: Vec<Vec<usize>> = (0..k).map(|i| shared(h, cycle[i], cycle[(i + 1) % k])).collect();
    let mut pick = Vec::with_capacity(k);
    fn rec(options: &[Vec<usize>], pick: &mut Vec<usize>) -> bool {
        let i = pick.len();
        if i == options.len() {
            return true;
        }
        for &v in &options[i] {
            if !pick.contains(&v) {
                pick.push(v);
                if rec(options, pick) {
                    return true;
                }
                pick.pop();
            }
        }
        false
    }
    rec(&options, &mut pick).then_some(pick)
}

/// Checks that `cycle` is a loop in the sense of this module.
pub fn is_loop(h: &Hypergraph, cycle: &[usize]) -> bool {
    let k = cycle.len();
    if k < 3 || cycle.iter().any(|&e| e >= h.n_edges()) {
        return false;
    }
    let mut sorted = cycle.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != k {
        return false;
    }
    for i in 0..k {
        for j in i + 1..k {
            let adjacent = j == i + 1 || (i == 0 && j == k - 1);
            if adjacent == shared(h, cycle[i], cycle[j]).is_empty() {
                return false;
            }
        }
    }
    linking_vertices(h, cycle).is_some()
}

pub fn maximal_loop(h: &Hypergraph) -> LoopReport {
    maximal_loop_limited(h, Limits::none(), None)
}

/// Longest loop by branch and bound. `seed` is a known loop (for example a
/// declared figure prefix) used as the initial lower bound.
pub fn maximal_loop_limited(h: &Hypergraph, limits: Limits, seed: Option<&[usize]>) -> LoopReport {
    let adj = intersection_graph(h);
    let mut s =
        LoopSearch { h, adj: &adj, best: Vec::new(), path: Vec::new(), limits, nodes: 0, timed_out: false };
    if let Some(c) = seed {
        if is_loop(h, c) {
            s.best = c.to_vec();
        }
    }
    let m = h.n_edges();
    for start in 0..m {
        // Every later edge would have to join the loop.
        if m - start <= s.best.len() || s.timed_out {
            break;
        }
        let mut allowed = BitSet::new(m);
        for e in start + 1..m {
            allowed.insert(e);
        }
        s.path.push(start);
        for x in adj[start].iter().filter(|&x| x > start).collect::<Vec<_>>() {
            s.path.push(x);
            let mut free = allowed.clone();
            free.remove(x);
            s.extend(free);
            s.path.pop();
            if s.timed_out {
                break;
            }
        }
        s.path.pop();
    }
    let vertices = if s.best.is_empty() { Vec::new() } else { linking_vertices(h, &s.best).expect("loop") };
    LoopReport { edges: s.best, vertices, exact: !s.timed_out }
}

struct LoopSearch<'a> {
    h: &'a Hypergraph,
    adj: &'a [BitSet],
    best: Vec<usize>,
    path: Vec<usize>,
    limits: Limits,
    nodes: u64,
    timed_out: bool,
}

impl LoopSearch<'_> {
    /// `path` is `s, x1, .., xt` with `t >= 1`; `free` holds edges above
    /// `s` that are off the path and not adjacent to `x1..x(t-1)`.
    fn extend(&mut self, free: BitSet) {
        self.nodes += 1;
        if self.nodes & 0x3ff == 0 && self.limits.expired() {
            self.timed_out = true;
        }
        if self.timed_out {
            return;
        }
        let s = self.path[0];
        let last = *self.path.last().expect("nonempty");
        if !self.bound_allows(&free, last, s) {
            return;
        }
        let mut next = self.adj[last].clone();
        next.and_assign(&free);
        for y in next.iter() {
            if self.adj[s].contains(y) {
                // y closes the cycle; it cannot be extended further.
                if self.path.len() + 1 > self.best.len() {
                    self.path.push(y);
                    if self.path.len() > 3 || linking_vertices(self.h, &self.path).is_some() {
                        self.best = self.path.clone();
                    }
                    self.path.pop();
                }
                continue;
            }
            let mut f = free.clone();
            f.and_not_assign(&self.adj[last]);
            f.remove(y);
            self.path.push(y);
            self.extend(f);
            self.path.pop();
            if self.timed_out {
                return;
            }
        }
    }

    /// Upper bound: the loop can only be completed through edges of `free`
    /// reachable from `last` that eventually touch `s`.
    fn bound_allows(&self, free: &BitSet, last: usize, s: usize) -> bool {
        let mut seen = BitSet::new(free.len());
        let mut frontier = self.adj[last].clone();
        frontier.and_assign(free);
        let mut stack: Vec<usize> = frontier.iter().collect();
        for &x in &stack {
            seen.insert(x);
        }
        let mut touches_start = false;
        while let Some(x) = stack.pop() {
            if self.adj[s].contains(x) {
                touches_start = true;
            }
            for y in self.adj[x].iter() {
                if free.contains(y) && !seen.contains(y) {
                    seen.insert(y);
                    stack.push(y);
                }
            }
        }
        touches_start && self.path.len() + seen.count() > self.best.len()
    }
}
