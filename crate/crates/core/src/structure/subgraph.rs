//! Sub-hypergraph containment up to isomorphism.
//!
//! `a` is contained in `b` when an injective vertex map sends every edge of
//! `a` onto an edge of `b` of the same size.

use crate::bits::BitSet;
use crate::mmp::Hypergraph;
use crate::solver::Limits;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("time budget exhausted")]
pub struct BudgetExhausted;

/// A witness that `a` is a sub-hypergraph of `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    /// `vertex_map[v]` is the image of vertex `v` of `a`.
    pub vertex_map: Vec<usize>,
    /// `edge_map[e]` is the edge of `b` hosting edge `e` of `a`.
    pub edge_map: Vec<usize>,
}

impl Embedding {
    pub fn identity(h: &Hypergraph) -> Self {
        Embedding { vertex_map: (0..h.n_vertices()).collect(), edge_map: (0..h.n_edges()).collect() }
    }

    /// Re-checks injectivity and that each edge lands exactly on its host.
    pub fn verify(&self, a: &Hypergraph, b: &Hypergraph) -> bool {
        if self.vertex_map.len() != a.n_vertices() || self.edge_map.len() != a.n_edges() {
            return false;
        }
        let mut seen = vec![false; b.n_vertices()];
        for &w in &self.vertex_map {
            if w >= b.n_vertices() || seen[w] {
                return false;
            }
            seen[w] = true;
        }
        let mut host_used = vec![false; b.n_edges()];
        for (e, &f) in self.edge_map.iter().enumerate() {
            if f >= b.n_edges() || host_used[f] {
                return false;
            }
            host_used[f] = true;
            let mut img: Vec<usize> = a.edge(e).iter().map(|&v| self.vertex_map[v]).collect();
            let mut host = b.edge(f).to_vec();
            img.sort_unstable();
            host.sort_unstable();
            if img != host {
                return false;
            }
        }
        true
    }
}

pub fn is_subgraph(a: &Hypergraph, b: &Hypergraph) -> bool {
    find_embedding(a, b, Limits::none()).expect("unlimited").is_some()
}

/// Searches for an embedding of `a` into `b`. `Ok(None)` is a proof that
/// none exists.
pub fn find_embedding(a: &Hypergraph, b: &Hypergraph, limits: Limits) -> Result<Option<Embedding>, BudgetExhausted> {
    embed(a, b, limits, FIRST_PASS_NODES, false)
}

fn embed(
    a: &Hypergraph,
    b: &Hypergraph,
    limits: Limits,
    first_pass: u64,
    always_host: bool,
) -> Result<Option<Embedding>, BudgetExhausted> {
    if a.n_vertices() > b.n_vertices() || a.n_edges() > b.n_edges() {
        return Ok(None);
    }
    let na = a.n_vertices();
    let nb = b.n_vertices();
    let ma = a.n_edges();
    let mb = b.n_edges();
    let degrees = |h: &Hypergraph, e: &[usize]| {
        let mut d: Vec<usize> = e.iter().map(|&v| h.degree(v)).collect();
        d.sort_unstable_by(|x, y| y.cmp(x));
        d
    };
    let b_degrees: Vec<Vec<usize>> = b.edges().iter().map(|e| degrees(b, e)).collect();
    // Hosts of each edge of a: same size, and vertex degrees that can
    // absorb those of the guest.
    let mut cand = Vec::with_capacity(ma);
    for e in a.edges() {
        let need = degrees(a, e);
        let hosts = BitSet::from_indices(
            mb,
            (0..mb).filter(|&f| b.edge(f).len() == e.len() && b_degrees[f].iter().zip(&need).all(|(h, n)| h >= n)),
        );
        if hosts.is_empty() {
            return Ok(None);
        }
        cand.push(hosts);
    }
    // Per-size incidence counts prune vertex images.
    let profile = |h: &Hypergraph, v: usize| {
        let mut p: Vec<usize> = h.incident(v).iter().map(|&e| h.edge(e).len()).collect();
        p.sort_unstable();
        p
    };
    let b_profiles: Vec<Vec<usize>> = (0..nb).map(|w| profile(b, w)).collect();
    let dom: Vec<BitSet> = (0..na)
        .map(|v| {
            let need = profile(a, v);
            BitSet::from_indices(nb, (0..nb).filter(|&w| dominates(&b_profiles[w], &need)))
        })
        .collect();
    if dom.iter().any(|s| s.is_empty()) {
        return Ok(None);
    }
    let a_sets: Vec<BitSet> = a.edges().iter().map(|e| BitSet::from_indices(na, e.iter().copied())).collect();
    let overlap = (0..ma).map(|i| (0..ma).map(|j| a_sets[i].intersection_count(&a_sets[j])).collect()).collect();
    let mut s = Search {
        a,
        b,
        order: symmetry_order(a, None),
        b_sets: b.edges().iter().map(|e| BitSet::from_indices(nb, e.iter().copied())).collect(),
        b_vertex_edges: (0..nb).map(|w| BitSet::from_indices(mb, b.incident(w).iter().copied())).collect(),
        shared: (0..ma)
            .map(|i| (0..ma).map(|k| a.edge(i).iter().copied().filter(|&v| a_sets[k].contains(v)).collect()).collect())
            .collect(),
        overlap,
        cand,
        host: vec![None; ma],
        dom,
        limits,
        nodes: 0,
        max_nodes: first_pass,
        row: vec![0; mb],
        touched: BitSet::new(mb),
        scratch: BitSet::new(nb),
        saved: Vec::new(),
    };
    let (cand, dom) = (s.cand.clone(), s.dom.clone());
    let found = match s.run(0) {
        Ok(found) => found,
        Err(Stop::Budget) => return Err(BudgetExhausted),
        Err(Stop::Nodes) => {
            // Hard instance: also use the host's symmetry on one guest edge.
            s.cand = cand;
            s.dom = dom;
            s.host.fill(None);
            s.restrict_by_host_symmetry(always_host);
            s.max_nodes = u64::MAX;
            s.run(0).map_err(|_| BudgetExhausted)?
        }
    };
    if !found {
        return Ok(None);
    }
    let vertex_map = s.matching(true).expect("leaf has a matching");
    let edge_map = s.host.iter().map(|h| h.expect("all hosted")).collect();
    Ok(Some(Embedding { vertex_map, edge_map }))
}

/// Search nodes tried before the host's automorphisms are computed.
const FIRST_PASS_NODES: u64 = 1 << 14;

/// Cap on the time spent finding the host's automorphisms.
const HOST_SYMMETRY_TIME: std::time::Duration = std::time::Duration::from_secs(60);

enum Stop {
    Budget,
    Nodes,
}

/// Whether sorted `have` can cover sorted `need` element by element.
fn dominates(have: &[usize], need: &[usize]) -> bool {
    let mut i = 0;
    for &x in need {
        while i < have.len() && have[i] != x {
            i += 1;
        }
        if i == have.len() {
            return false;
        }
        i += 1;
    }
    true
}

/// Pairs `(e, o)` requiring the host of `e` to precede the host of `o`.
///
/// Along a chain of stabilizers `G1 ⊇ G2 ⊇ ...` of guest edges
/// `e1, e2, ...`, where `G(k+1)` fixes `e1..ek`, any embedding can be moved
/// by an automorphism so that each `ek` has the least host in its
/// `Gk`-orbit. Each `Gk` is generated by the automorphisms found at level
/// `k` and below, which keeps the chain nested.
///
/// With `pinned`, the chain starts from the stabilizer of that edge and no
/// constraint is placed on the pinned edge itself, leaving it free for the
/// host's symmetry.
fn symmetry_order(a: &Hypergraph, pinned: Option<usize>) -> Vec<(usize, usize)> {
    let ma = a.n_edges();
    let mut fixed: Vec<usize> = pinned.into_iter().collect();
    let mut levels: Vec<Vec<Vec<usize>>> = Vec::new();
    loop {
        let gens = crate::structure::canon::edge_automorphisms(a, &fixed, Limits::none());
        if gens.is_empty() {
            break;
        }
        let orbits = edge_orbits(ma, &gens);
        let pick = (0..ma).filter(|e| !fixed.contains(e)).max_by_key(|&e| (orbits.iter().filter(|&&r| r == orbits[e]).count(), usize::MAX - e));
        let Some(e) = pick else { break };
        if orbits.iter().filter(|&&r| r == orbits[e]).count() < 2 {
            break;
        }
        fixed.push(e);
        levels.push(gens);
    }
    let skip = pinned.is_some() as usize;
    let mut order = Vec::new();
    for (k, &e) in fixed.iter().enumerate().skip(skip) {
        let k = k - skip;
        let gens: Vec<Vec<usize>> = levels[k..].iter().flatten().cloned().collect();
        let orbits = edge_orbits(ma, &gens);
        order.extend((0..ma).filter(|&o| o != e && orbits[o] == orbits[e]).map(|o| (e, o)));
    }
    order
}

/// Orbit representative of each edge under the group generated by `gens`.
fn edge_orbits(m: usize, gens: &[Vec<usize>]) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for g in gens {
        for (i, &j) in g.iter().enumerate() {
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            if ri != rj {
                parent[ri.max(rj)] = ri.min(rj);
            }
        }
    }
    (0..m).map(|x| find(&mut parent, x)).collect()
}

/// Maps edges rather than vertices. Because every guest edge lands on a
/// whole host edge, two guest edges meeting in `s` vertices need hosts
/// meeting in exactly `s` vertices. A guest vertex may only go to the
/// common vertices of its hosts, and a bipartite matching on these domains
/// decides whether an injective vertex map exists, so vertices are never
/// branched on.
struct Search<'a> {
    a: &'a Hypergraph,
    b: &'a Hypergraph,
    b_sets: Vec<BitSet>,
    /// Host edges at each host vertex.
    b_vertex_edges: Vec<BitSet>,
    /// Host order constraints from the guest's symmetry.
    order: Vec<(usize, usize)>,
    /// Pairwise intersection sizes of the guest's edges.
    overlap: Vec<Vec<usize>>,
    /// `shared[i][k]`: guest vertices in both edge `i` and edge `k`.
    shared: Vec<Vec<Vec<usize>>>,
    cand: Vec<BitSet>,
    host: Vec<Option<usize>>,
    dom: Vec<BitSet>,
    limits: Limits,
    nodes: u64,
    max_nodes: u64,
    /// Scratch: intersection sizes with the host edge being tried.
    row: Vec<usize>,
    /// Scratch: host edges meeting the host edge being tried.
    touched: BitSet,
    /// Scratch host vertex set.
    scratch: BitSet,
    /// Per depth, the candidate and domain state to restore.
    saved: Vec<(Vec<BitSet>, Vec<BitSet>)>,
}

impl Search<'_> {
    fn run(&mut self, mapped: usize) -> Result<bool, Stop> {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Err(Stop::Nodes);
        }
        if self.nodes & 0x3ff == 0 && self.limits.expired() {
            return Err(Stop::Budget);
        }
        let ma = self.a.n_edges();
        if mapped == ma {
            return Ok(self.matching(true).is_some());
        }
        // Fewest hosts first; ties go to the edge most tied to mapped ones.
        let j = (0..ma)
            .filter(|&j| self.host[j].is_none())
            .min_by_key(|&j| {
                let ties: usize = (0..ma).filter(|&i| self.host[i].is_some()).map(|i| self.overlap[i][j]).sum();
                (self.cand[j].count(), usize::MAX - ties, j)
            })
            .expect("unmapped edge");
        let hosts: Vec<usize> = self.cand[j].iter().collect();
        if self.saved.len() <= mapped {
            self.saved.push((self.cand.clone(), self.dom.clone()));
        }
        let (mut cand, mut dom) = std::mem::take(&mut self.saved[mapped]);
        for (c, s) in cand.iter_mut().zip(&self.cand) {
            c.clone_from(s);
        }
        for (d, s) in dom.iter_mut().zip(&self.dom) {
            d.clone_from(s);
        }
        let mut found = false;
        for f in hosts {
            self.host[j] = Some(f);
            if self.place(j, f) && self.run(mapped + 1)? {
                found = true;
                break;
            }
            self.host[j] = None;
            for (c, s) in self.cand.iter_mut().zip(&cand) {
                c.clone_from(s);
            }
            for (d, s) in self.dom.iter_mut().zip(&dom) {
                d.clone_from(s);
            }
        }
        self.saved[mapped] = (cand, dom);
        Ok(found)
    }

    /// Any embedding can be moved by a host automorphism so that a chosen
    /// guest edge lands on the least host of its orbit. The guest's own
    /// symmetry then only applies within the stabilizer of that edge, so
    /// this is used when the host saves more than the guest gives up.
    fn restrict_by_host_symmetry(&mut self, always: bool) {
        let deadline = match self.limits.deadline {
            Some(d) => d.min(std::time::Instant::now() + HOST_SYMMETRY_TIME),
            None => std::time::Instant::now() + HOST_SYMMETRY_TIME,
        };
        let orbits = crate::structure::canon::edge_orbits(self.b, Limits { deadline: Some(deadline) });
        let ma = self.a.n_edges();
        let guest_gain = 1 + self.order.iter().filter(|&&(e, _)| Some(e) == self.order.first().map(|p| p.0)).count();
        let best = (0..ma)
            .map(|e| {
                let all = self.cand[e].count();
                let reps = self.cand[e].iter().filter(|&f| orbits[f] == f).count();
                (all as f64 / reps.max(1) as f64, e)
            })
            .max_by(|x, y| x.0.total_cmp(&y.0).then(y.1.cmp(&x.1)));
        let Some((gain, e)) = best else { return };
        if !always && gain <= guest_gain as f64 {
            return;
        }
        self.order = symmetry_order(self.a, Some(e));
        let keep: Vec<usize> = self.cand[e].iter().filter(|&f| orbits[f] == f).collect();
        self.cand[e] = BitSet::from_indices(self.b.n_edges(), keep);
    }

    /// Propagates hosting guest edge `j` on `f`; false on a dead end.
    fn place(&mut self, j: usize, f: usize) -> bool {
        let ma = self.a.n_edges();
        for &v in self.a.edge(j) {
            self.dom[v].and_assign(&self.b_sets[f]);
            if self.dom[v].is_empty() {
                return false;
            }
        }
        if !self.pin_singletons() {
            return false;
        }
        for &(e, o) in &self.order {
            if e == j && self.host[o].is_none() {
                self.cand[o].clear_below(f + 1);
            } else if o == j && self.host[e].is_none() {
                self.cand[e].clear_from(f);
            }
        }
        // Hosts of the other edges meet `f` in exactly as many vertices
        // as their guests meet edge `j`.
        let mut touched = std::mem::take(&mut self.touched);
        touched.clear_from(0);
        for &w in self.b.edge(f) {
            for &g in self.b.incident(w) {
                self.row[g] += 1;
                touched.insert(g);
            }
        }
        let size = self.b.edge(f).len();
        let mut exact: Vec<Option<BitSet>> = vec![None; size + 1];
        for k in 0..ma {
            if self.host[k].is_some() {
                continue;
            }
            let s = self.overlap[j][k];
            if s == 0 {
                self.cand[k].and_not_assign(&touched);
                continue;
            }
            let keep = exact[s].get_or_insert_with(|| {
                BitSet::from_indices(touched.len(), touched.iter().filter(|&g| self.row[g] == s))
            });
            self.cand[k].and_assign(keep);
        }
        for g in touched.iter() {
            self.row[g] = 0;
        }
        self.touched = touched;
        // A hosted edge may only meet the host of edge `k` inside the
        // domains of the guest vertices the two share.
        for i in 0..ma {
            let Some(bi) = self.host[i] else { continue };
            for k in 0..ma {
                if self.host[k].is_some() || self.overlap[i][k] == 0 {
                    continue;
                }
                self.scratch.clone_from(&self.b_sets[bi]);
                for &v in &self.shared[i][k] {
                    self.scratch.and_not_assign(&self.dom[v]);
                }
                for w in self.scratch.iter() {
                    self.cand[k].and_not_assign(&self.b_vertex_edges[w]);
                }
            }
        }
        if (0..ma).any(|k| self.host[k].is_none() && self.cand[k].is_empty()) {
            return false;
        }
        self.matching(false).is_some()
    }

    /// Removes each forced image from every other domain.
    fn pin_singletons(&mut self) -> bool {
        let na = self.a.n_vertices();
        let mut queue: Vec<usize> = (0..na).filter(|&v| self.dom[v].count() == 1).collect();
        while let Some(v) = queue.pop() {
            let w = self.dom[v].first().expect("singleton");
            for u in 0..na {
                if u != v && self.dom[u].contains(w) {
                    self.dom[u].remove(w);
                    match self.dom[u].count() {
                        0 => return false,
                        1 => queue.push(u),
                        _ => {}
                    }
                }
            }
        }
        true
    }

    /// A distinct image for every vertex touched by a hosted edge (or for
    /// every vertex when `all`), by augmenting paths.
    fn matching(&self, all: bool) -> Option<Vec<usize>> {
        let na = self.a.n_vertices();
        let nb = self.b.n_vertices();
        let mut owner = vec![usize::MAX; nb];
        let mut image = vec![usize::MAX; na];
        let mut stamp = vec![0usize; nb];
        fn augment(v: usize, dom: &[BitSet], owner: &mut [usize], image: &mut [usize], stamp: &mut [usize], round: usize) -> bool {
            for w in dom[v].iter() {
                if stamp[w] == round {
                    continue;
                }
                stamp[w] = round;
                if owner[w] == usize::MAX || augment(owner[w], dom, owner, image, stamp, round) {
                    owner[w] = v;
                    image[v] = w;
                    return true;
                }
            }
            false
        }
        let mut round = 0;
        for v in 0..na {
            if !all && !self.a.incident(v).iter().any(|&e| self.host[e].is_some()) {
                continue;
            }
            round += 1;
            if !augment(v, &self.dom, &mut owner, &mut image, &mut stamp, round) {
                return None;
            }
        }
        Some(image)
    }
}
