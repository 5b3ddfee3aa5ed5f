//! Hypergraphs built from rules rather than stored strings.

use crate::bits::BitSet;
use crate::label::Label;
use crate::mmp::Hypergraph;
use crate::vector::{canonical_ray, Cx, Vector, VectorAssignment};

/// The `n`-dim triangle: `n + 1` edges, any two sharing exactly one vertex,
/// so `(n + 1) n / 2` vertices of degree two. For `n = 4` this is the
/// pentagram 10-5, for `n = 6` the heptagram 21-7.
pub fn triangle(n: usize) -> Hypergraph {
    assert!(n >= 2, "triangle needs at least two dimensions");
    let k = n + 1;
    let mut edges = vec![Vec::new(); k];
    let mut v = 0;
    for a in 0..k {
        for b in a + 1..k {
            edges[a].push(v);
            edges[b].push(v);
            v += 1;
        }
    }
    Hypergraph::from_index_edges(v, edges).with_dimension(Some(n))
}

/// Every orthogonal basis formed by `rays`, as a hypergraph with the rays
/// as its coordinatization. Vertex `i` is the `i`-th ray in label order;
/// edges are listed lexicographically.
pub fn orthogonal_bases(rays: &[Vector], dim: usize) -> (Hypergraph, VectorAssignment) {
    let n = rays.len();
    let adj: Vec<BitSet> = (0..n)
        .map(|i| BitSet::from_indices(n, (0..n).filter(|&j| j != i && crate::vector::dot(&rays[i], &rays[j]).is_zero())))
        .collect();
    let mut edges = Vec::new();
    let mut clique = Vec::with_capacity(dim);
    fn grow(adj: &[BitSet], dim: usize, cand: BitSet, clique: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if clique.len() == dim {
            out.push(clique.clone());
            return;
        }
        for v in cand.iter() {
            let mut next = cand.clone();
            next.and_assign(&adj[v]);
            // Only extend upwards so each clique is listed once.
            for u in 0..=v {
                next.remove(u);
            }
            if next.count() + clique.len() + 1 < dim {
                continue;
            }
            clique.push(v);
            grow(adj, dim, next, clique, out);
            clique.pop();
        }
    }
    grow(&adj, dim, BitSet::full(n), &mut clique, &mut edges);
    let mut va = VectorAssignment::default();
    for (i, r) in rays.iter().enumerate() {
        va.insert(Label::from_index(i), r.clone());
    }
    (Hypergraph::from_index_edges(n, edges).with_dimension(Some(dim)), va)
}

fn int_vector(v: &[i64]) -> Vector {
    v.iter().map(|&x| Cx::int(x)).collect()
}

/// Keeps one of each `±v`, as the vector with positive leading entry.
fn rays_from(vectors: impl IntoIterator<Item = Vec<i64>>) -> Vec<Vector> {
    let mut out: Vec<Vector> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for v in vectors {
        let lead = v.iter().find(|&&x| x != 0).copied().unwrap_or(0);
        if lead <= 0 {
            continue;
        }
        let vec = int_vector(&v);
        if seen.insert(canonical_ray(&vec).expect("nonzero")) {
            out.push(vec);
        }
    }
    out
}

fn sign_patterns(n: usize) -> impl Iterator<Item = Vec<i64>> {
    (0..3usize.pow(n as u32)).map(move |mut k| {
        (0..n)
            .map(|_| {
                let d = k % 3;
                k /= 3;
                [0, 1, -1][d]
            })
            .rev()
            .collect()
    })
}

/// The 120 rays of the E8 root system and their 2025 orthogonal octads.
/// Roots `±e_i ± e_j` are scaled by 2 and the half-integer roots by 2 as
/// well, which leaves orthogonality unchanged.
pub fn e8_master() -> (Hypergraph, VectorAssignment) {
    let mut roots = Vec::new();
    for p in sign_patterns(8) {
        let nz = p.iter().filter(|&&x| x != 0).count();
        if nz == 2 {
            roots.push(p.iter().map(|x| 2 * x).collect::<Vec<_>>());
        } else if nz == 8 && p.iter().filter(|&&x| x < 0).count() % 2 == 0 {
            roots.push(p);
        }
    }
    orthogonal_bases(&rays_from(roots), 8)
}

/// E8 master with its last edge removed; every choice gives an isomorphic
/// set.
pub fn e8_master_minus_one() -> (Hypergraph, VectorAssignment) {
    let (h, va) = e8_master();
    let last = h.n_edges() - 1;
    (h.without_edge(last), va)
}

/// The 236 rays of `{0, ±1}^6` with one to four nonzero entries, and their
/// 1216 orthogonal bases. Up to normalization these are the components
/// `{0, ±1/2, ±1/√3, ±1/√2, 1}`.
pub fn hexeract_master() -> (Hypergraph, VectorAssignment) {
    let vs = sign_patterns(6).filter(|p| (1..=4).contains(&p.iter().filter(|&&x| x != 0).count()));
    orthogonal_bases(&rays_from(vs), 6)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::is_ks;

    #[test]
    fn triangle_counts() {
        for (n, t) in [(4, "10-5"), (5, "15-6"), (6, "21-7"), (7, "28-8"), (8, "36-9")] {
            let h = triangle(n);
            assert_eq!(h.type_name(), t);
            assert!((0..h.n_vertices()).all(|v| h.degree(v) == 2));
        }
    }

    #[test]
    fn triangle_ks_pattern() {
        assert!(is_ks(&triangle(4)).is_ks);
        assert!(!is_ks(&triangle(5)).is_ks);
        assert!(is_ks(&triangle(6)).is_ks);
        assert!(!is_ks(&triangle(7)).is_ks);
        assert!(is_ks(&triangle(8)).is_ks);
    }

    #[test]
    fn hexeract_shape() {
        let (h, va) = hexeract_master();
        assert_eq!(h.type_name(), "236-1216");
        assert!(crate::vector::verify_coordinatization(&h, &va).is_valid());
    }
}
