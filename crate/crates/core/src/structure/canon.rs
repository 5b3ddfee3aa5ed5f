//! Canonical forms up to isomorphism.
//!
//! The hypergraph is viewed as a bipartite graph whose nodes are its
//! vertices followed by its edges. Colour refinement splits nodes by the
//! multiset of neighbour colours; when refinement stalls, a node of the
//! smallest undecided cell is individualized and the search branches. Each
//! leaf is a discrete colouring and yields a certificate; the form is the
//! least `(trace, certificate)` over all leaves. Automorphisms found by
//! equal leaves prune sibling branches in the same orbit.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use sha2::{Digest, Sha256};

use crate::mmp::Hypergraph;
use crate::solver::Limits;

/// An isomorphism-invariant MMP line together with a hash of it.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    text: String,
    hash: u64,
}

impl CanonicalForm {
    /// Canonical MMP text; vertices are named in alphabet order.
    pub fn text(&self) -> &str {
        &self.text
    }

    pub fn hash(&self) -> u64 {
        self.hash
    }

    /// The canonical representative as a hypergraph.
    pub fn hypergraph(&self) -> Hypergraph {
        crate::mmp::parse_mmp(&self.text).expect("canonical text parses")
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({:016x} {})", self.hash, self.text)
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

pub fn canonical_form(h: &Hypergraph) -> CanonicalForm {
    canonical_labeling(h).0
}

/// The canonical form and the relabelling `position[v]` of each vertex.
pub fn canonical_labeling(h: &Hypergraph) -> (CanonicalForm, Vec<usize>) {
    let g = Bipartite::new(h);
    let mut search = Search { g: &g, best: None, first: None, generators: Vec::new(), limits: Limits::none() };
    let colors = g.initial_colors();
    search.run(colors, &mut Vec::new(), &mut Vec::new());
    let best = search.best.expect("at least one leaf");
    let (edges, position) = g.expand(&best.colors);
    let text = Hypergraph::from_index_edges(h.n_vertices(), edges).to_plain_mmp();
    let digest = Sha256::digest(text.as_bytes());
    let hash = u64::from_be_bytes(digest[..8].try_into().expect("8 bytes"));
    (CanonicalForm { text, hash }, position)
}

/// Generators of a group of automorphisms of `h` that fix every edge in
/// `fixed_edges`, each given by its action on the edges. The group found
/// may be a proper subgroup of the full stabilizer; every generator is a
/// genuine automorphism. When `limits` expire the search stops early with
/// the generators found so far.
pub(crate) fn edge_automorphisms(h: &Hypergraph, fixed_edges: &[usize], limits: Limits) -> Vec<Vec<usize>> {
    let g = Bipartite::new(h);
    let n = g.n;
    let base = g.initial_colors();
    let keys: Vec<(u32, usize)> = base
        .iter()
        .enumerate()
        .map(|(x, &c)| (c, if x >= n { fixed_edges.iter().position(|&e| e == x - n).map_or(0, |p| p + 1) } else { 0 }))
        .collect();
    let mut search = Search { g: &g, best: None, first: None, generators: Vec::new(), limits };
    search.run(rank(&keys), &mut Vec::new(), &mut Vec::new());
    search
        .generators
        .iter()
        .map(|p| p[n..].iter().map(|&x| x as usize - n).collect::<Vec<usize>>())
        .filter(|p| p.iter().enumerate().any(|(i, &j)| i != j))
        .collect()
}

/// Orbit representative (least member) of each edge under the
/// automorphisms found for `h` within `limits`. Orbits may be split more
/// finely than under the full group, never coarser.
pub fn edge_orbits(h: &Hypergraph, limits: Limits) -> Vec<usize> {
    let m = h.n_edges();
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for g in edge_automorphisms(h, &[], limits) {
        for (i, &j) in g.iter().enumerate() {
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            if ri != rj {
                parent[ri.max(rj)] = ri.min(rj);
            }
        }
    }
    (0..m).map(|x| find(&mut parent, x)).collect()
}

/// Isomorphism test by comparing canonical forms.
pub fn are_isomorphic(a: &Hypergraph, b: &Hypergraph) -> bool {
    canonical_form(a) == canonical_form(b)
}

/// Incidence graph with twin vertices merged: vertices lying in exactly
/// the same edges are interchangeable, so each such class becomes one
/// node that remembers its size.
struct Bipartite {
    /// Number of class nodes; edge nodes follow.
    n: usize,
    adj: Vec<Vec<u32>>,
    /// Size of each class.
    mult: Vec<usize>,
    /// Class of each vertex of the hypergraph.
    class: Vec<usize>,
    /// Edge sizes in the hypergraph.
    sizes: Vec<usize>,
}

impl Bipartite {
    fn new(h: &Hypergraph) -> Self {
        let mut by_edges: BTreeMap<&[usize], usize> = BTreeMap::new();
        let mut class = Vec::with_capacity(h.n_vertices());
        let mut mult: Vec<usize> = Vec::new();
        let mut members: Vec<usize> = Vec::new();
        for v in 0..h.n_vertices() {
            let next = mult.len();
            let c = *by_edges.entry(h.incident(v)).or_insert(next);
            if c == next {
                mult.push(0);
                members.push(v);
            }
            mult[c] += 1;
            class.push(c);
        }
        let n = mult.len();
        let mut adj: Vec<Vec<u32>> = members.iter().map(|&v| h.incident(v).iter().map(|&e| (n + e) as u32).collect()).collect();
        adj.extend(h.edges().iter().map(|e| {
            let mut cs: Vec<u32> = e.iter().map(|&v| class[v] as u32).collect();
            cs.sort_unstable();
            cs.dedup();
            cs
        }));
        Bipartite { n, adj, mult, class, sizes: h.edges().iter().map(Vec::len).collect() }
    }

    fn len(&self) -> usize {
        self.adj.len()
    }

    /// Vertex classes by size, then edges by size.
    fn initial_colors(&self) -> Vec<u32> {
        let keys: Vec<(u8, usize)> = (0..self.len())
            .map(|x| if x >= self.n { (1, self.sizes[x - self.n]) } else { (0, self.mult[x]) })
            .collect();
        rank(&keys)
    }

    /// Canonical edges and vertex positions once the leaf colouring
    /// `colors` orders the class nodes: each class takes a run of
    /// consecutive positions.
    fn expand(&self, colors: &[u32]) -> (Vec<Vec<usize>>, Vec<usize>) {
        let mut by_color: Vec<usize> = (0..self.n).collect();
        by_color.sort_unstable_by_key(|&c| colors[c]);
        let mut base = vec![0usize; self.n];
        let mut next = 0;
        for &c in &by_color {
            base[c] = next;
            next += self.mult[c];
        }
        let mut taken = vec![0usize; self.n];
        let position: Vec<usize> = self
            .class
            .iter()
            .map(|&c| {
                taken[c] += 1;
                base[c] + taken[c] - 1
            })
            .collect();
        let mut edges: Vec<Vec<usize>> = self.adj[self.n..]
            .iter()
            .map(|cs| cs.iter().flat_map(|&c| base[c as usize]..base[c as usize] + self.mult[c as usize]).collect())
            .collect();
        for e in &mut edges {
            e.sort_unstable();
        }
        edges.sort_unstable();
        (edges, position)
    }

    /// Refines to the coarsest equitable colouring below `colors`.
    fn refine(&self, colors: Vec<u32>) -> Vec<u32> {
        let mut colors = rank(&colors);
        let mut classes = count_classes(&colors);
        loop {
            let keys: Vec<(u32, Vec<u32>)> = (0..self.len())
                .map(|x| {
                    let mut nb: Vec<u32> = self.adj[x].iter().map(|&y| colors[y as usize]).collect();
                    nb.sort_unstable();
                    (colors[x], nb)
                })
                .collect();
            let next = rank(&keys);
            let c = count_classes(&next);
            colors = next;
            if c == classes {
                return colors;
            }
            classes = c;
        }
    }
}

/// Dense ranks of `keys` in sorted order.
fn rank<K: Ord>(keys: &[K]) -> Vec<u32> {
    let mut order: Vec<u32> = (0..keys.len() as u32).collect();
    order.sort_unstable_by(|&a, &b| keys[a as usize].cmp(&keys[b as usize]));
    let mut ranks = vec![0u32; keys.len()];
    let mut r = 0;
    for w in 0..order.len() {
        if w > 0 && keys[order[w] as usize] != keys[order[w - 1] as usize] {
            r += 1;
        }
        ranks[order[w] as usize] = r;
    }
    ranks
}

fn count_classes(colors: &[u32]) -> usize {
    colors.iter().map(|&c| c as usize + 1).max().unwrap_or(0)
}

/// Sizes of colour cells in colour order; an invariant of the node.
fn trace(colors: &[u32]) -> Vec<u32> {
    let mut sizes = vec![0u32; count_classes(colors)];
    for &c in colors {
        sizes[c as usize] += 1;
    }
    sizes
}

type Cert = Vec<Vec<u32>>;

struct Leaf {
    traces: Vec<Vec<u32>>,
    cert: Cert,
    colors: Vec<u32>,
}

struct Search<'a> {
    g: &'a Bipartite,
    best: Option<Leaf>,
    first: Option<(Cert, Vec<u32>)>,
    generators: Vec<Vec<u32>>,
    limits: Limits,
}

impl Search<'_> {
    fn certificate(&self, colors: &[u32]) -> Cert {
        let n = self.g.n;
        let mut edges: Cert = (n..self.g.len())
            .map(|x| {
                let mut e: Vec<u32> = self.g.adj[x].iter().map(|&v| colors[v as usize]).collect();
                e.sort_unstable();
                e
            })
            .collect();
        edges.sort_unstable();
        edges
    }

    /// Automorphism mapping the node labelled `p` in `a` to the node
    /// labelled `p` in `b`.
    fn automorphism(from: &[u32], to: &[u32]) -> Vec<u32> {
        let mut inv = vec![0u32; to.len()];
        for (x, &c) in to.iter().enumerate() {
            inv[c as usize] = x as u32;
        }
        from.iter().map(|&c| inv[c as usize]).collect()
    }

    fn run(&mut self, colors: Vec<u32>, traces: &mut Vec<Vec<u32>>, fixed: &mut Vec<u32>) {
        if self.best.is_some() && self.limits.expired() {
            return;
        }
        let colors = self.g.refine(colors);
        traces.push(trace(&colors));
        if let Some(best) = &self.best {
            // Prune unless this node can still reach the least leaf.
            let k = traces.len().min(best.traces.len());
            let prune = match traces[..k].cmp(&best.traces[..k]) {
                Ordering::Greater => true,
                Ordering::Less => false,
                Ordering::Equal => traces.len() > best.traces.len(),
            };
            if prune {
                traces.pop();
                return;
            }
        }
        let sizes = traces.last().expect("pushed");
        let target = (0..sizes.len()).filter(|&c| sizes[c] > 1).min_by_key(|&c| (sizes[c], c));
        let Some(target) = target else {
            self.leaf(colors, traces);
            traces.pop();
            return;
        };
        let cell: Vec<u32> = (0..colors.len() as u32).filter(|&x| colors[x as usize] == target as u32).collect();
        let mut tried: Vec<u32> = Vec::new();
        let mut orbits = Orbits::default();
        for &x in &cell {
            if !tried.is_empty() && orbits.refresh(&self.generators, fixed, colors.len()) {
                let rx = orbits.find(x);
                if tried.iter().any(|&t| orbits.find(t) == rx) {
                    continue;
                }
            }
            tried.push(x);
            // Individualize x ahead of the rest of its cell.
            let next: Vec<u32> = colors
                .iter()
                .enumerate()
                .map(|(y, &c)| 2 * c + (c == target as u32 && y as u32 != x) as u32)
                .collect();
            fixed.push(x);
            self.run(next, traces, fixed);
            fixed.pop();
        }
        traces.pop();
    }

    fn leaf(&mut self, colors: Vec<u32>, traces: &[Vec<u32>]) {
        let cert = self.certificate(&colors);
        match &self.first {
            None => self.first = Some((cert.clone(), colors.clone())),
            Some((c, fc)) if *c == cert => {
                let a = Self::automorphism(&colors, fc);
                self.generators.push(a);
            }
            _ => {}
        }
        let better = match &self.best {
            None => true,
            Some(b) => {
                let ord = traces.cmp(&b.traces[..]).then_with(|| cert.cmp(&b.cert));
                if ord == Ordering::Equal {
                    let a = Self::automorphism(&colors, &b.colors);
                    self.generators.push(a);
                }
                ord == Ordering::Less
            }
        };
        if better {
            self.best = Some(Leaf { traces: traces.to_vec(), cert, colors });
        }
    }
}

/// Orbits of the known generators that fix every individualized node,
/// rebuilt only when generators have been added since the last use.
#[derive(Default)]
struct Orbits {
    seen: usize,
    parent: Vec<u32>,
}

impl Orbits {
    /// Brings the partition up to date; false while it is trivial.
    fn refresh(&mut self, generators: &[Vec<u32>], fixed: &[u32], len: usize) -> bool {
        if generators.len() != self.seen {
            self.seen = generators.len();
            self.parent.clear();
            self.parent.extend(0..len as u32);
            for g in generators.iter().filter(|g| fixed.iter().all(|&f| g[f as usize] == f)) {
                for (a, &b) in g.iter().enumerate() {
                    let (ra, rb) = (self.find(a as u32), self.find(b));
                    if ra != rb {
                        self.parent[ra.max(rb) as usize] = ra.min(rb);
                    }
                }
            }
        }
        !self.parent.is_empty()
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let up = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = up;
            x = up;
        }
        x
    }
}

/// Non-isomorphic representatives with multiplicities.
///
/// The first-seen member of each class is kept. Merging two stores is an
/// associative union with summed multiplicities; the surviving
/// representative is the one from the left operand.
#[derive(Clone, Debug, Default)]
pub struct DedupStore {
    classes: BTreeMap<CanonicalForm, (Hypergraph, usize)>,
    order: Vec<CanonicalForm>,
}

impl DedupStore {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `h`; returns true if it starts a new class.
    pub fn insert(&mut self, h: Hypergraph) -> bool {
        let form = canonical_form(&h);
        self.insert_with_form(form, h, 1)
    }

    pub fn insert_with_form(&mut self, form: CanonicalForm, h: Hypergraph, count: usize) -> bool {
        match self.classes.get_mut(&form) {
            Some(entry) => {
                entry.1 += count;
                false
            }
            None => {
                self.order.push(form.clone());
                self.classes.insert(form, (h, count));
                true
            }
        }
    }

    pub fn merge(&mut self, other: DedupStore) {
        let DedupStore { mut classes, order } = other;
        for form in order {
            let (h, c) = classes.remove(&form).expect("ordered form present");
            self.insert_with_form(form, h, c);
        }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn contains(&self, form: &CanonicalForm) -> bool {
        self.classes.contains_key(form)
    }

    /// Total number of inserted hypergraphs.
    pub fn total(&self) -> usize {
        self.classes.values().map(|(_, c)| c).sum()
    }

    /// Representatives with multiplicities, in first-seen order.
    pub fn representatives(&self) -> impl Iterator<Item = (&Hypergraph, usize)> {
        self.order.iter().map(|f| {
            let (h, c) = &self.classes[f];
            (h, *c)
        })
    }

    /// Classes in canonical-form order; independent of insertion order.
    pub fn canonical(&self) -> impl Iterator<Item = (&CanonicalForm, usize)> {
        self.classes.iter().map(|(f, (_, c))| (f, *c))
    }
}

pub fn dedup(stream: impl IntoIterator<Item = Hypergraph>) -> DedupStore {
    let mut store = DedupStore::new();
    for h in stream {
        store.insert(h);
    }
    store
}
