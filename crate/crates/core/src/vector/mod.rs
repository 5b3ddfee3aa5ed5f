//! Vector coordinatizations: assigning rays to vertices so that every edge
//! is an orthogonal basis.

pub mod field;

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bits::BitSet;
use crate::label::Label;
use crate::mmp::Hypergraph;
use crate::solver::Limits;
use crate::structure::Embedding;

pub use field::{parse_component, ComponentError, Cx};

pub type Vector = Vec<Cx>;

/// Hermitian product `Σ u_k · conj(v_k)`.
pub fn dot(u: &[Cx], v: &[Cx]) -> Cx {
    u.iter().zip(v).fold(Cx::ZERO, |acc, (&a, b)| acc + a * b.conj())
}

/// Projective representative: the vector scaled so its first nonzero
/// entry is 1. `None` for the zero vector.
pub fn canonical_ray(v: &[Cx]) -> Option<Vector> {
    let lead = v.iter().find(|c| !c.is_zero())?;
    let inv = lead.inv().expect("nonzero");
    Some(v.iter().map(|&c| c * inv).collect())
}

pub fn parallel(u: &[Cx], v: &[Cx]) -> bool {
    u.len() == v.len() && canonical_ray(u).is_some() && canonical_ray(u) == canonical_ray(v)
}

/// A finite set of allowed vector components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentAlphabet {
    pub name: String,
    pub values: Vec<Cx>,
}

/// Names accepted by [`ComponentAlphabet::named`].
pub const ALPHABET_NAMES: &[&str] = &["01", "pm1", "pm1i", "omega", "omega2", "pm-omega", "golden", "hexeract"];

impl ComponentAlphabet {
    pub fn new(name: impl Into<String>, mut values: Vec<Cx>) -> Self {
        if !values.contains(&Cx::ZERO) {
            values.insert(0, Cx::ZERO);
        }
        let mut seen = Vec::new();
        values.retain(|v| {
            let fresh = !seen.contains(v);
            seen.push(*v);
            fresh
        });
        ComponentAlphabet { name: name.into(), values }
    }

    /// Builds from a comma separated list of component expressions.
    pub fn custom(list: &str) -> Result<Self, ComponentError> {
        let values = list.split(',').map(parse_component).collect::<Result<Vec<_>, _>>()?;
        Ok(Self::new(list, values))
    }

    pub fn named(name: &str) -> Option<Self> {
        let p = |s: &str| parse_component(s).expect("builtin component");
        let list: &[&str] = match name {
            "01" => &["0", "1"],
            "pm1" => &["0", "1", "-1"],
            "pm1i" => &["0", "1", "-1", "i", "-i"],
            "omega" => &["0", "1", "w"],
            "omega2" => &["0", "1", "w", "w^2"],
            "pm-omega" => &["0", "1", "-1", "w", "-w", "w^2", "-w^2"],
            "golden" => &["0", "(r5-1)/2", "-(r5-1)/2", "1", "-1", "(r5+1)/2", "-(r5+1)/2", "2"],
            "hexeract" => &["0", "1/2", "-1/2", "1/r3", "-1/r3", "1/r2", "-1/r2", "1"],
            _ => return None,
        };
        Some(Self::new(name, list.iter().map(|s| p(s)).collect()))
    }

    /// Named alphabet, or a custom comma list when the name is unknown.
    pub fn resolve(arg: &str) -> Result<Self, ComponentError> {
        Self::named(arg).map_or_else(|| Self::custom(arg), Ok)
    }
}

/// Vertex label to vector.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VectorAssignment {
    pub vectors: BTreeMap<Label, Vector>,
}

impl VectorAssignment {
    pub fn get(&self, l: &Label) -> Option<&Vector> {
        self.vectors.get(l)
    }

    pub fn insert(&mut self, l: Label, v: Vector) {
        self.vectors.insert(l, v);
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Restricts to the vertices of `h`, keyed by `h`'s labels.
    pub fn for_hypergraph(&self, h: &Hypergraph) -> Option<Vec<Vector>> {
        h.labels().iter().map(|l| self.vectors.get(l).cloned()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoordError {
    #[error("line {line}: {reason}")]
    Syntax { line: usize, reason: String },
    #[error("line {line}: {source}")]
    Component { line: usize, source: ComponentError },
    #[error("vertex {0} has no vector")]
    Missing(Label),
    #[error("edges of different sizes; a uniform dimension is required")]
    NonUniform,
    #[error("embedding does not map the subset into the master")]
    BadEmbedding,
    #[error("search budget exhausted after {nodes} nodes")]
    Budget { nodes: u64 },
}

/// Parses lines `V = (c1,...,cn)`; `#` starts a comment.
pub fn parse_coordinates(text: &str) -> Result<VectorAssignment, CoordError> {
    let mut va = VectorAssignment::default();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let syntax = |reason: &str| CoordError::Syntax { line, reason: reason.to_string() };
        let (name, rest) = body.split_once('=').ok_or_else(|| syntax("expected `=`"))?;
        let label = Label::parse(name.trim()).ok_or_else(|| syntax("bad vertex name"))?;
        let rest = rest.trim();
        let inner = rest
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| syntax("expected a parenthesised vector"))?;
        let comps = split_top_level(inner)
            .into_iter()
            .map(|c| parse_component(c).map_err(|source| CoordError::Component { line, source }))
            .collect::<Result<Vec<_>, _>>()?;
        va.insert(label, comps);
    }
    Ok(va)
}

/// Splits on commas outside parentheses.
fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

/// Writes one `V = (...)` line per vertex, in the order of `h` when given,
/// else in label order.
pub fn format_coordinates(va: &VectorAssignment, h: Option<&Hypergraph>) -> String {
    let order: Vec<Label> = match h {
        Some(h) => h.labels().iter().copied().filter(|l| va.vectors.contains_key(l)).collect(),
        None => va.vectors.keys().copied().collect(),
    };
    let mut out = String::new();
    for l in order {
        let comps: Vec<String> = va.vectors[&l].iter().map(|c| c.to_string()).collect();
        writeln!(out, "{l} = ({})", comps.join(",")).expect("string write");
    }
    out
}

/// Everything wrong with a coordinatization.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CoordReport {
    pub missing: Vec<Label>,
    pub wrong_length: Vec<Label>,
    pub zero: Vec<Label>,
    /// `(edge, a, b)` for non-orthogonal pairs inside an edge.
    pub non_orthogonal: Vec<(usize, Label, Label)>,
    /// Distinct vertices carrying the same ray.
    pub parallel: Vec<(Label, Label)>,
    /// Edges with fewer vertices than the dimension, so not a full basis.
    pub short_edges: Vec<usize>,
}

impl CoordReport {
    pub fn is_valid(&self) -> bool {
        self.missing.is_empty()
            && self.wrong_length.is_empty()
            && self.zero.is_empty()
            && self.non_orthogonal.is_empty()
            && self.parallel.is_empty()
            && self.short_edges.is_empty()
    }
}

/// Checks every intra-edge pair exactly, plus global distinctness of rays.
/// Pairwise-orthogonal nonzero vectors are independent, so an edge with as
/// many vertices as the dimension is then a basis.
pub fn verify_coordinatization(h: &Hypergraph, va: &VectorAssignment) -> CoordReport {
    let mut r = CoordReport::default();
    let dim = h
        .dimension()
        .or_else(|| h.labels().iter().find_map(|l| va.get(l).map(|v| v.len())))
        .unwrap_or(0);
    let mut vecs: Vec<Option<&Vector>> = Vec::with_capacity(h.n_vertices());
    for l in h.labels() {
        match va.get(l) {
            None => {
                r.missing.push(*l);
                vecs.push(None);
            }
            Some(v) if v.len() != dim => {
                r.wrong_length.push(*l);
                vecs.push(None);
            }
            Some(v) if v.iter().all(|c| c.is_zero()) => {
                r.zero.push(*l);
                vecs.push(None);
            }
            Some(v) => vecs.push(Some(v)),
        }
    }
    for (ei, e) in h.edges().iter().enumerate() {
        if e.len() < dim {
            r.short_edges.push(ei);
        }
        for (i, &a) in e.iter().enumerate() {
            for &b in &e[i + 1..] {
                if let (Some(u), Some(v)) = (vecs[a], vecs[b]) {
                    if !dot(u, v).is_zero() {
                        r.non_orthogonal.push((ei, h.label(a), h.label(b)));
                    }
                }
            }
        }
    }
    let mut rays: HashMap<Vector, usize> = HashMap::new();
    for (v, vec) in vecs.iter().enumerate() {
        if let Some(vec) = vec {
            let key = canonical_ray(vec).expect("nonzero");
            if let Some(&u) = rays.get(&key) {
                r.parallel.push((h.label(u), h.label(v)));
            } else {
                rays.insert(key, v);
            }
        }
    }
    r
}

/// Restricts the master's vectors along a verified embedding.
pub fn trace_coordinatization(
    master: &Hypergraph,
    master_va: &VectorAssignment,
    subset: &Hypergraph,
    embedding: &Embedding,
) -> Result<VectorAssignment, CoordError> {
    if !embedding.verify(subset, master) {
        return Err(CoordError::BadEmbedding);
    }
    let mut va = VectorAssignment::default();
    for (v, &w) in embedding.vertex_map.iter().enumerate() {
        let ml = master.label(w);
        let vec = master_va.get(&ml).ok_or(CoordError::Missing(ml))?;
        va.insert(subset.label(v), vec.clone());
    }
    Ok(va)
}

/// Result of a completed search.
#[derive(Clone, Debug)]
pub struct FindOutcome {
    /// `None` proves there is no coordinatization over the alphabet.
    pub assignment: Option<VectorAssignment>,
    pub nodes: u64,
    pub pool_size: usize,
}

/// One representative per ray with entries from the alphabet, fewest
/// nonzero entries first, then in enumeration order.
pub fn vector_pool(alphabet: &ComponentAlphabet, dim: usize) -> Vec<Vector> {
    let k = alphabet.values.len();
    let mut digits = vec![0usize; dim];
    let mut seen: HashMap<Vector, ()> = HashMap::new();
    let mut pool: Vec<(usize, usize, Vector)> = Vec::new();
    let mut index = 0;
    loop {
        let v: Vector = digits.iter().map(|&d| alphabet.values[d]).collect();
        if let Some(key) = canonical_ray(&v) {
            if seen.insert(key, ()).is_none() {
                let support = v.iter().filter(|c| !c.is_zero()).count();
                pool.push((support, index, v));
            }
        }
        index += 1;
        // Odometer, most significant digit first.
        let mut i = dim;
        loop {
            if i == 0 {
                pool.sort_by_key(|(s, i, _)| (*s, *i));
                return pool.into_iter().map(|(_, _, v)| v).collect();
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < k {
                break;
            }
            digits[i] = 0;
        }
    }
}

/// Backtracking over the ray pool. The open vertex with the fewest
/// candidate rays goes next, preferring vertices in the most complete
/// edges. A seed shuffles candidate
/// order reproducibly; without one the pool order is used.
pub fn find_coordinatization(
    h: &Hypergraph,
    alphabet: &ComponentAlphabet,
    dim: usize,
    seed: Option<u64>,
    limits: Limits,
) -> Result<FindOutcome, CoordError> {
    if h.uniform_edge_size() != Some(dim) {
        return Err(CoordError::NonUniform);
    }
    let pool = vector_pool(alphabet, dim);
    let mut search = VecSearch {
        h,
        pool: &pool,
        ortho: vec![None; pool.len()],
        assign: vec![None; h.n_vertices()],
        used: BitSet::new(pool.len()),
        rng: seed.map(ChaCha8Rng::seed_from_u64),
        limits,
        nodes: 0,
    };
    let found = search.run()?;
    let assignment = found.then(|| {
        let mut va = VectorAssignment::default();
        for (v, p) in search.assign.iter().enumerate() {
            va.insert(h.label(v), pool[p.expect("complete")].clone());
        }
        va
    });
    Ok(FindOutcome { assignment, nodes: search.nodes, pool_size: pool.len() })
}

struct VecSearch<'a> {
    h: &'a Hypergraph,
    pool: &'a [Vector],
    /// Lazily computed orthogonality rows.
    ortho: Vec<Option<BitSet>>,
    assign: Vec<Option<usize>>,
    used: BitSet,
    rng: Option<ChaCha8Rng>,
    limits: Limits,
    nodes: u64,
}

impl VecSearch<'_> {
    fn ortho_row(&mut self, p: usize) -> &BitSet {
        if self.ortho[p].is_none() {
            let u = &self.pool[p];
            let row = BitSet::from_indices(self.pool.len(), (0..self.pool.len()).filter(|&q| dot(u, &self.pool[q]).is_zero()));
            self.ortho[p] = Some(row);
        }
        self.ortho[p].as_ref().expect("filled")
    }

    fn candidates(&mut self, v: usize) -> BitSet {
        let mut c = BitSet::full(self.pool.len());
        c.and_not_assign(&self.used);
        let h = self.h;
        for &e in h.incident(v) {
            for &u in h.edge(e) {
                if let Some(p) = self.assign[u] {
                    let row = self.ortho_row(p).clone();
                    c.and_assign(&row);
                }
            }
        }
        c
    }

    fn run(&mut self) -> Result<bool, CoordError> {
        self.nodes += 1;
        if self.nodes & 0xff == 0 && self.limits.expired() {
            return Err(CoordError::Budget { nodes: self.nodes });
        }
        let h = self.h;
        // Fewest candidates first; ties go to the vertex whose edges are
        // most complete, then to the lowest index.
        let mut best: Option<(usize, BitSet, usize)> = None;
        let open: Vec<usize> = (0..h.n_vertices()).filter(|&v| self.assign[v].is_none()).collect();
        for v in open {
            let c = self.candidates(v);
            let filled = h
                .incident(v)
                .iter()
                .map(|&e| h.edge(e).iter().filter(|&&u| self.assign[u].is_some()).count())
                .max()
                .unwrap_or(0);
            let better = match &best {
                None => true,
                Some((_, b, f)) => (c.count(), usize::MAX - filled) < (b.count(), usize::MAX - f),
            };
            if better {
                let empty = c.is_empty();
                best = Some((v, c, filled));
                if empty {
                    break;
                }
            }
        }
        let Some((v, cands, _)) = best else {
            return Ok(true);
        };
        let mut order: Vec<usize> = cands.iter().collect();
        if let Some(rng) = self.rng.as_mut() {
            order.shuffle(rng);
        }
        for p in order {
            self.assign[v] = Some(p);
            self.used.insert(p);
            if self.forward_ok(v) && self.run()? {
                return Ok(true);
            }
            self.used.remove(p);
            self.assign[v] = None;
        }
        Ok(false)
    }

    /// Every open co-edge vertex of `v` still has a candidate.
    fn forward_ok(&mut self, v: usize) -> bool {
        let h = self.h;
        for &e in h.incident(v) {
            for &u in h.edge(e) {
                if self.assign[u].is_none() && self.candidates(u).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mmp::parse_mmp;

    fn eighteen_nine() -> Hypergraph {
        parse_mmp("1234,4567,789A,ABCD,DEFG,GHI1,29BI,35CE,68FH.").unwrap()
    }

    #[test]
    fn canonical_ray_is_scale_invariant() {
        let v: Vector = ["0", "w", "1", "-i"].iter().map(|s| parse_component(s).unwrap()).collect();
        let c = canonical_ray(&v).unwrap();
        assert_eq!(canonical_ray(&c).unwrap(), c);
        for s in ["2", "-1", "w^2", "i", "(r5-1)/2"] {
            let k = parse_component(s).unwrap();
            let scaled: Vector = v.iter().map(|&x| x * k).collect();
            assert_eq!(canonical_ray(&scaled).unwrap(), c);
        }
    }

    #[test]
    fn pool_sizes() {
        assert_eq!(vector_pool(&ComponentAlphabet::named("pm1").unwrap(), 4).len(), 40);
        assert_eq!(vector_pool(&ComponentAlphabet::named("01").unwrap(), 3).len(), 7);
    }

    #[test]
    fn find_then_verify_eighteen_nine() {
        let h = eighteen_nine();
        let out = find_coordinatization(&h, &ComponentAlphabet::named("pm1").unwrap(), 4, None, Limits::none()).unwrap();
        let va = out.assignment.unwrap();
        assert!(verify_coordinatization(&h, &va).is_valid());
        let seeded =
            find_coordinatization(&h, &ComponentAlphabet::named("pm1").unwrap(), 4, Some(9), Limits::none()).unwrap();
        assert!(verify_coordinatization(&h, &seeded.assignment.unwrap()).is_valid());
    }

    #[test]
    fn no_real_binary_coordinatization() {
        // {0,1} rays cannot host 18-9: each basis would be four unit
        // vectors, and there are only four of those.
        let h = eighteen_nine();
        let out = find_coordinatization(&h, &ComponentAlphabet::named("01").unwrap(), 4, None, Limits::none()).unwrap();
        assert!(out.assignment.is_none());
    }

    #[test]
    fn sign_flip_is_caught() {
        let h = eighteen_nine();
        let mut va = find_coordinatization(&h, &ComponentAlphabet::named("pm1").unwrap(), 4, None, Limits::none())
            .unwrap()
            .assignment
            .unwrap();
        let l = *va.vectors.iter().find(|(_, v)| v.iter().filter(|c| !c.is_zero()).count() > 1).unwrap().0;
        let v = va.vectors.get_mut(&l).unwrap();
        let k = v.iter().rposition(|c| !c.is_zero()).unwrap();
        v[k] = -v[k];
        let r = verify_coordinatization(&h, &va);
        assert!(!r.non_orthogonal.is_empty());
        assert!(r.non_orthogonal.iter().all(|&(_, a, b)| a == l || b == l));
    }

    #[test]
    fn file_round_trip() {
        let text = "1 = (1,0,0)\n2 = (0,1,-1)\n3 = (0,w,(r5-1)/2)\n";
        let va = parse_coordinates(text).unwrap();
        let again = format_coordinates(&va, None);
        assert_eq!(parse_coordinates(&again).unwrap(), va);
        assert_eq!(format_coordinates(&parse_coordinates(&again).unwrap(), None), again);
        assert!(matches!(parse_coordinates("1 (1,0)"), Err(CoordError::Syntax { line: 1, .. })));
    }

    #[test]
    fn missing_vectors_are_reported() {
        let h = parse_mmp("123.").unwrap();
        let va = parse_coordinates("1 = (1,0,0)\n2 = (0,1,0)\n").unwrap();
        let r = verify_coordinatization(&h, &va);
        assert_eq!(r.missing, vec![Label::parse("3").unwrap()]);
    }

    #[test]
    fn identity_trace() {
        let h = parse_mmp("123.").unwrap();
        let va = parse_coordinates("1 = (1,0,0)\n2 = (0,1,0)\n3 = (0,0,1)\n").unwrap();
        let t = trace_coordinatization(&h, &va, &h, &Embedding::identity(&h)).unwrap();
        assert_eq!(t, va);
        let bad = Embedding { vertex_map: vec![0, 0, 1], edge_map: vec![0] };
        assert_eq!(trace_coordinatization(&h, &va, &h, &bad), Err(CoordError::BadEmbedding));
    }
}
