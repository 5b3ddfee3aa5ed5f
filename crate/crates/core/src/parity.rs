//! Parity proofs: an odd number of edges covering every vertex an even
//! number of times. Such a subset cannot receive exactly one 1 per edge,
//! since counting 1s by vertices gives an even total.
//!
//! Certificates are odd-weight vectors in the nullspace of the vertex-edge
//! incidence matrix over GF(2).

use std::collections::BTreeMap;

use crate::bits::BitSet;
use crate::mmp::Hypergraph;

/// Nullspace dimensions up to this bound are enumerated exhaustively to
/// find a minimum certificate.
pub const DEFAULT_ENUMERATION_BOUND: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityCertificate {
    /// Sorted edge indices; odd in number.
    pub edges: Vec<usize>,
    /// `(vertex, coverage)` for every vertex covered at least once.
    pub coverage: Vec<(usize, usize)>,
    /// Whether `edges` is known to be of minimum size.
    pub minimum: bool,
}

impl ParityCertificate {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Recounts coverage directly on `h`.
    pub fn verify(&self, h: &Hypergraph) -> bool {
        if self.edges.len() % 2 == 0 || self.edges.iter().any(|&e| e >= h.n_edges()) {
            return false;
        }
        coverage(h, &self.edges).iter().all(|&c| c % 2 == 0)
    }
}

fn coverage(h: &Hypergraph, edges: &[usize]) -> Vec<usize> {
    let mut c = vec![0; h.n_vertices()];
    for &e in edges {
        for &v in h.edge(e) {
            c[v] += 1;
        }
    }
    c
}

fn certificate(h: &Hypergraph, x: &BitSet, minimum: bool) -> ParityCertificate {
    let edges: Vec<usize> = x.iter().collect();
    let cov = coverage(h, &edges);
    let coverage = cov.iter().enumerate().filter(|(_, &c)| c > 0).map(|(v, &c)| (v, c)).collect();
    ParityCertificate { edges, coverage, minimum }
}

/// Basis of `{x : M x = 0}` over GF(2), where `M` is the incidence matrix.
pub fn incidence_nullspace(h: &Hypergraph) -> Vec<BitSet> {
    let m = h.n_edges();
    let mut rows: Vec<BitSet> =
        (0..h.n_vertices()).map(|v| BitSet::from_indices(m, h.incident(v).iter().copied())).collect();
    // Reduced row echelon form.
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..m {
        let Some(p) = (r..rows.len()).find(|&i| rows[i].contains(col)) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row.contains(col) {
                row.xor_assign(&pivot);
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    let mut is_pivot = vec![false; m];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    (0..m)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut x = BitSet::new(m);
            x.insert(free);
            for (i, &pc) in pivots.iter().enumerate() {
                if rows[i].contains(free) {
                    x.insert(pc);
                }
            }
            x
        })
        .collect()
}

/// Finds a parity certificate, preferring one with fewest edges.
pub fn has_parity_proof(h: &Hypergraph) -> Option<ParityCertificate> {
    has_parity_proof_bounded(h, DEFAULT_ENUMERATION_BOUND)
}

/// As [`has_parity_proof`]; minimality is only guaranteed when the
/// nullspace dimension is at most `bound`.
pub fn has_parity_proof_bounded(h: &Hypergraph, bound: usize) -> Option<ParityCertificate> {
    let basis = incidence_nullspace(h);
    let odd = basis.iter().position(|b| b.count() % 2 == 1)?;
    if basis.len() > bound || basis.len() >= 63 {
        // Greedy: keep the lightest odd vector among basis combinations of
        // the odd pivot with each other basis vector.
        let mut best = basis[odd].clone();
        for b in &basis {
            let mut y = best.clone();
            y.xor_assign(b);
            if y.count() % 2 == 1 && y.count() < best.count() {
                best = y;
            }
        }
        return Some(certificate(h, &best, false));
    }
    // Gray-code walk over all 2^d combinations.
    let d = basis.len();
    let mut x = BitSet::new(h.n_edges());
    let mut best: Option<BitSet> = None;
    for k in 1u64..1 << d {
        let bit = k.trailing_zeros() as usize;
        x.xor_assign(&basis[bit]);
        let w = x.count();
        if w % 2 == 1 && best.as_ref().is_none_or(|b| w < b.count()) {
            best = Some(x.clone());
        }
    }
    best.map(|b| certificate(h, &b, true))
}

/// True when the whole edge set is a certificate: an odd number of edges
/// and every vertex of even degree.
pub fn whole_set_parity(h: &Hypergraph) -> bool {
    h.n_edges() % 2 == 1 && (0..h.n_vertices()).all(|v| h.degree(v) % 2 == 0)
}

/// Per `(vertices, edges)` type: number of sets and number with a parity
/// proof.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ParityStatistics {
    pub by_type: BTreeMap<(usize, usize), (usize, usize)>,
}

impl ParityStatistics {
    pub fn add(&mut self, h: &Hypergraph) {
        let proof = has_parity_proof_bounded(h, 0).is_some();
        let cell = self.by_type.entry((h.n_vertices(), h.n_edges())).or_default();
        cell.0 += 1;
        cell.1 += proof as usize;
    }

    pub fn total(&self) -> (usize, usize) {
        self.by_type.values().fold((0, 0), |(a, b), (c, d)| (a + c, b + d))
    }

    /// Fraction of sets with a proof, or `None` for an empty table.
    pub fn fraction(&self) -> Option<f64> {
        let (n, p) = self.total();
        (n > 0).then(|| p as f64 / n as f64)
    }
}

pub fn parity_statistics<'a>(corpus: impl IntoIterator<Item = &'a Hypergraph>) -> ParityStatistics {
    let mut s = ParityStatistics::default();
    for h in corpus {
        s.add(h);
    }
    s
}
