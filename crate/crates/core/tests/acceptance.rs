//! Acceptance criteria AC1 to AC9, one line each.
//!
//! Every check compares the library against an oracle computed here:
//! brute force, an independent algebraic test, or a value stated for the
//! data. A criterion listed in `KNOWN_UNATTAINABLE` still runs and still
//! prints FAIL, but only breaks the run when its failures differ from the
//! recorded ones.

use std::collections::BTreeMap;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use mmpks::corpus::{self, fixture};
use mmpks::parity::{has_parity_proof, whole_set_parity};
use mmpks::pipeline::{generate_class, load_criticals, write_criticals, GenerateOptions, MasterRegistry, Reduction, StripPlan};
use mmpks::solver::{self, Limits};
use mmpks::structure::{canonical_form, dedup, find_embedding, maximal_loop_limited};
use mmpks::vector::{find_coordinatization, parse_coordinates, verify_coordinatization, ComponentAlphabet, VectorAssignment};
use mmpks::Hypergraph;

/// Criteria that cannot pass on the bundled data, with the exact failures
/// expected. See the notes beside each for why.
const KNOWN_UNATTAINABLE: &[(&str, &[&str])] = &[(
    // Strings whose printed name disagrees with their own vertex or edge
    // count, and a printed 80-20 that admits a full 0-1 assignment.
    "AC3",
    &[
        "class-148-265:43-32 is 54-32",
        "class-300-675:221-127a is 211-127",
        "class-300-675:226-143 is 226-142",
        "class-300-675:257-169/2 is 258-167",
        "dim16:80-20 is not KS",
    ],
)];

/// Per-set budget for the corpus sweep.
const SET_BUDGET: Duration = Duration::from_secs(600);
/// Budget for 192-118 in the 3-dim check.
const LARGE_3DIM_BUDGET: Duration = Duration::from_secs(1800);
/// Budget for each coordinatization search.
const FIND_BUDGET: Duration = Duration::from_secs(300);
/// Budget for each subgraph query.
const SUBGRAPH_BUDGET: Duration = Duration::from_secs(1800);

struct Check {
    pass: bool,
    detail: String,
    /// Individual failures, compared against `KNOWN_UNATTAINABLE`.
    failures: Vec<String>,
}

impl Check {
    fn from_failures(failures: Vec<String>, detail: String) -> Check {
        Check { pass: failures.is_empty(), detail, failures }
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 9] = [
        ("AC1", ac1_class_24_24),
        ("AC2", ac2_collapse_60_75),
        ("AC3", ac3_corpus),
        ("AC4", ac4_parity),
        ("AC5", ac5_non_ks),
        ("AC6", ac6_loops),
        ("AC7", ac7_coordinates),
        ("AC8", ac8_subgraphs),
        ("AC9", ac9_properties),
    ];
    let only: Vec<String> = std::env::args().skip(1).filter(|a| a.starts_with("AC")).collect();
    let mut unexpected = 0;
    for (id, f) in criteria {
        if !only.is_empty() && !only.iter().any(|o| o == id) {
            continue;
        }
        let t = Instant::now();
        let check = match panic::catch_unwind(AssertUnwindSafe(f)) {
            Ok(c) => c,
            Err(e) => {
                let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
                Check::from_failures(vec!["panicked".into()], msg.unwrap_or_else(|| "panicked".into()))
            }
        };
        let secs = t.elapsed().as_secs_f64();
        if check.pass {
            println!("{id} PASS {} ({secs:.1}s)", check.detail);
            continue;
        }
        let mut got = check.failures.clone();
        got.sort();
        let known = KNOWN_UNATTAINABLE.iter().find(|(k, _)| *k == id).map(|(_, f)| {
            let mut f: Vec<String> = f.iter().map(|s| s.to_string()).collect();
            f.sort();
            f
        });
        let tag = if known.as_ref() == Some(&got) { "FAIL known-unattainable" } else { "FAIL" };
        if tag == "FAIL" {
            unexpected += 1;
        }
        println!("{id} {tag} {}; failures: {} ({secs:.1}s)", check.detail, got.join("; "));
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn registry_master(name: &str) -> Hypergraph {
    MasterRegistry::default().load(name).unwrap_or_else(|e| panic!("{name}: {e}")).hypergraph
}

// ---- oracles ----

/// Whether some 0-1 valuation puts exactly one 1 in every edge, by trying
/// every vertex subset.
fn brute_force_non_ks(h: &Hypergraph) -> Option<u64> {
    let n = h.n_vertices();
    assert!(n <= 30, "brute force is limited to 30 vertices");
    let masks: Vec<u64> = h.edges().iter().map(|e| e.iter().fold(0u64, |m, &v| m | 1 << v)).collect();
    (0u64..1 << n).find(|&ones| masks.iter().all(|&e| (ones & e).count_ones() == 1))
}

/// Whether `ones` puts exactly one 1 in every edge.
fn is_full_assignment(h: &Hypergraph, ones: &[usize]) -> bool {
    h.edges().iter().all(|e| e.iter().filter(|v| ones.contains(v)).count() == 1)
}

/// An odd set of edges covering each vertex evenly exists exactly when the
/// all-ones edge vector lies outside the span of the vertex rows of the
/// incidence matrix over GF(2).
fn odd_even_cover_exists(h: &Hypergraph) -> bool {
    let words = h.n_edges().div_ceil(64);
    let mut rows: Vec<Vec<u64>> = vec![vec![0; words]; h.n_vertices()];
    for (e, edge) in h.edges().iter().enumerate() {
        for &v in edge {
            rows[v][e / 64] |= 1 << (e % 64);
        }
    }
    let mut basis: Vec<(usize, Vec<u64>)> = Vec::new();
    let pivot = |r: &[u64]| r.iter().enumerate().find(|(_, &w)| w != 0).map(|(i, w)| i * 64 + w.trailing_zeros() as usize);
    let reduce = |mut r: Vec<u64>, basis: &[(usize, Vec<u64>)]| {
        for (p, b) in basis {
            if r[p / 64] >> (p % 64) & 1 == 1 {
                r.iter_mut().zip(b).for_each(|(x, y)| *x ^= y);
            }
        }
        r
    };
    for r in rows {
        let r = reduce(r, &basis);
        if let Some(p) = pivot(&r) {
            for (_, b) in basis.iter_mut() {
                if b[p / 64] >> (p % 64) & 1 == 1 {
                    b.iter_mut().zip(&r).for_each(|(x, y)| *x ^= y);
                }
            }
            basis.push((p, r));
        }
    }
    let mut ones = vec![0u64; words];
    for e in 0..h.n_edges() {
        ones[e / 64] |= 1 << (e % 64);
    }
    pivot(&reduce(ones, &basis)).is_some()
}

/// Smallest odd edge set covering every vertex evenly, by Gray-code
/// enumeration of all edge subsets.
fn brute_force_parity(h: &Hypergraph) -> Option<usize> {
    let m = h.n_edges();
    assert!(m <= 24 && h.n_vertices() <= 128);
    let masks: Vec<u128> = h.edges().iter().map(|e| e.iter().fold(0u128, |a, &v| a | 1 << v)).collect();
    let mut cover = 0u128;
    let mut best: Option<usize> = None;
    for i in 1u64..1 << m {
        let flip = i.trailing_zeros() as usize;
        cover ^= masks[flip];
        let subset = i ^ (i >> 1);
        let size = subset.count_ones() as usize;
        if cover == 0 && size % 2 == 1 && best.is_none_or(|b| size < b) {
            best = Some(size);
        }
    }
    best
}

/// A loop in the sense used here: distinct edges in cyclic order, each
/// consecutive pair linked by its own distinct shared vertex.
fn is_valid_loop(h: &Hypergraph, edges: &[usize], links: &[usize]) -> bool {
    let k = edges.len();
    let distinct = |xs: &[usize]| {
        let mut s = xs.to_vec();
        s.sort_unstable();
        s.dedup();
        s.len() == xs.len()
    };
    k >= 2
        && links.len() == k
        && distinct(edges)
        && distinct(links)
        && (0..k).all(|i| h.edge(edges[i]).contains(&links[i]) && h.edge(edges[(i + 1) % k]).contains(&links[i]))
}

/// Complex value of a printed component.
fn component_value(text: &str) -> (f64, f64) {
    let (sign, body) = match text.strip_prefix('-') {
        Some(b) => (-1.0, b),
        None => (1.0, text),
    };
    let (re, im) = match body {
        "0" => (0.0, 0.0),
        "1" => (1.0, 0.0),
        "2" => (2.0, 0.0),
        "i" => (0.0, 1.0),
        "w" => (-0.5, 3f64.sqrt() / 2.0),
        other => panic!("component {other} is outside the oracle's table"),
    };
    (sign * re, sign * im)
}

/// Floating-point reading of coordinate text, independent of the exact
/// field used by the library.
fn float_vectors(text: &str) -> BTreeMap<String, Vec<(f64, f64)>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            let (name, vec) = l.split_once('=').expect("name = (..)");
            let body = vec.trim().trim_start_matches('(').trim_end_matches(')');
            (name.trim().to_string(), body.split(',').map(|c| component_value(c.trim())).collect())
        })
        .collect()
}

/// Hermitian products inside edges vanish and no two vertices share a ray.
fn floats_realize(h: &Hypergraph, vecs: &BTreeMap<String, Vec<(f64, f64)>>) -> bool {
    let inner = |u: &[(f64, f64)], v: &[(f64, f64)]| {
        u.iter().zip(v).fold((0.0, 0.0), |(r, i), (&(a, b), &(c, d))| (r + a * c + b * d, i + b * c - a * d))
    };
    let norm = |u: &[(f64, f64)]| inner(u, u).0;
    let Some(vs): Option<Vec<&Vec<(f64, f64)>>> = (0..h.n_vertices()).map(|v| vecs.get(&h.label(v).to_string())).collect()
    else {
        return false;
    };
    let orthogonal = h.edges().iter().all(|e| {
        e.iter().enumerate().all(|(i, &a)| {
            e[i + 1..].iter().all(|&b| {
                let (r, im) = inner(vs[a], vs[b]);
                r.abs() < 1e-9 && im.abs() < 1e-9
            })
        })
    });
    let distinct = (0..vs.len()).all(|a| {
        norm(vs[a]) > 1e-9
            && (a + 1..vs.len()).all(|b| {
                let (r, im) = inner(vs[a], vs[b]);
                (r * r + im * im - norm(vs[a]) * norm(vs[b])).abs() > 1e-9
            })
    });
    orthogonal && distinct
}

/// Whether every edge of `a` lands exactly on a distinct edge of `b`.
fn embedding_holds(a: &Hypergraph, b: &Hypergraph, vertex_map: &[usize], edge_map: &[usize]) -> bool {
    let mut images = vertex_map.to_vec();
    images.sort_unstable();
    images.dedup();
    let mut hosts = edge_map.to_vec();
    hosts.sort_unstable();
    hosts.dedup();
    images.len() == a.n_vertices()
        && hosts.len() == a.n_edges()
        && a.edges().iter().zip(edge_map).all(|(e, &f)| {
            let mut img: Vec<usize> = e.iter().map(|&v| vertex_map[v]).collect();
            let mut host = b.edge(f).to_vec();
            img.sort_unstable();
            host.sort_unstable();
            img == host
        })
}

fn relabelled(h: &Hypergraph, rng: &mut ChaCha8Rng) -> Hypergraph {
    let mut perm: Vec<usize> = (0..h.n_vertices()).collect();
    perm.shuffle(rng);
    let mut edges: Vec<Vec<usize>> = h
        .edges()
        .iter()
        .map(|e| {
            let mut f: Vec<usize> = e.iter().map(|&v| perm[v]).collect();
            f.shuffle(rng);
            f
        })
        .collect();
    edges.shuffle(rng);
    Hypergraph::from_index_edges(h.n_vertices(), edges)
}

/// Isomorphism by trying every vertex permutation.
fn brute_force_isomorphic(a: &Hypergraph, b: &Hypergraph) -> bool {
    let n = a.n_vertices();
    if n != b.n_vertices() || a.n_edges() != b.n_edges() {
        return false;
    }
    let key = |h: &Hypergraph, p: &[usize]| {
        let mut e: Vec<u32> = h.edges().iter().map(|e| e.iter().fold(0u32, |m, &v| m | 1 << p[v])).collect();
        e.sort_unstable();
        e
    };
    let target = key(b, &(0..n).collect::<Vec<_>>());
    let mut p: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    if key(a, &p) == target {
        return true;
    }
    // Heap's algorithm.
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                p.swap(0, i);
            } else {
                p.swap(c[i], i);
            }
            if key(a, &p) == target {
                return true;
            }
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    false
}

/// Random hypergraph on at most `n` vertices with every vertex used.
fn random_hypergraph(rng: &mut ChaCha8Rng, n: usize, m: usize, sizes: std::ops::RangeInclusive<usize>) -> Hypergraph {
    let mut verts: Vec<usize> = (0..n).collect();
    let mut edges: Vec<Vec<usize>> = (0..m)
        .map(|_| {
            verts.shuffle(rng);
            let mut e = verts[..rng.gen_range(sizes.clone()).min(n)].to_vec();
            e.sort_unstable();
            e
        })
        .collect();
    edges.sort();
    edges.dedup();
    let mut used: Vec<usize> = edges.iter().flatten().copied().collect();
    used.sort_unstable();
    used.dedup();
    let edges = edges.iter().map(|e| e.iter().map(|v| used.binary_search(v).expect("used")).collect()).collect();
    Hypergraph::from_index_edges(used.len(), edges)
}

fn type_counts<'a>(hs: impl IntoIterator<Item = &'a Hypergraph>) -> BTreeMap<String, usize> {
    let mut m = BTreeMap::new();
    for h in hs {
        *m.entry(h.type_name()).or_insert(0) += 1;
    }
    m
}

fn show_counts(m: &BTreeMap<String, usize>) -> String {
    m.iter().map(|(k, v)| format!("{k}x{v}")).collect::<Vec<_>>().join(",")
}

// ---- criteria ----

fn ac1_class_24_24() -> Check {
    let master = registry_master("24-24");
    let out = generate_class(&master, &GenerateOptions::new(StripPlan::Closure)).expect("closure runs");
    let reps: Vec<&Hypergraph> = out.criticals.representatives().map(|(h, _)| h).collect();
    let types = type_counts(reps.iter().copied());
    let expected: BTreeMap<String, usize> =
        [("18-9", 1), ("20-11", 2), ("22-13", 2), ("24-15", 1)].iter().map(|(k, v)| (k.to_string(), *v)).collect();
    let mut failures = Vec::new();
    if out.ks_classes != Some(1232) {
        failures.push(format!("{:?} KS subsets", out.ks_classes));
    }
    if types != expected {
        failures.push(format!("criticals {}", show_counts(&types)));
    }
    for h in &reps {
        if brute_force_non_ks(h).is_some() {
            failures.push(format!("{} admits a full assignment", h.type_name()));
        }
        if !solver::criticality(h).is_ok_and(|c| c.is_critical) {
            failures.push(format!("{} is not critical", h.type_name()));
        }
    }
    if !out.failures.is_empty() {
        failures.push(format!("{} undecided items", out.failures.len()));
    }
    let detail = format!(
        "{} non-isomorphic KS proper subsets; {} criticals {}",
        out.ks_classes.unwrap_or(0),
        reps.len(),
        show_counts(&types)
    );
    Check::from_failures(failures, detail)
}

fn ac2_collapse_60_75() -> Check {
    let master = registry_master("60-75");
    let strips: Vec<Hypergraph> =
        mmpks::pipeline::strip(&master, &StripPlan::Exhaustive { k_min: 1, k_max: 1 }).expect("k=1").collect();
    let store = dedup(strips.iter().cloned());
    let target = fixture("masters:60-74");
    let mut failures = Vec::new();
    if strips.len() != 75 || store.len() != 1 {
        failures.push(format!("{} strips in {} classes", strips.len(), store.len()));
    }
    let survivor = store.representatives().next().map(|(h, _)| h.clone()).expect("one class");
    if canonical_form(&survivor) != canonical_form(&target) {
        failures.push("canonical form differs from 60-74".into());
    }
    // Equal sizes plus an embedding is an isomorphism, found without the
    // canonical form.
    let same_size = survivor.n_vertices() == target.n_vertices() && survivor.n_edges() == target.n_edges();
    match find_embedding(&survivor, &target, Limits::within(SET_BUDGET)) {
        Ok(Some(e)) if same_size && embedding_holds(&survivor, &target, &e.vertex_map, &e.edge_map) => {}
        _ => failures.push("no isomorphism to 60-74 found by embedding".into()),
    }
    Check::from_failures(failures, format!("{} strips, {} class, survivor {}", strips.len(), store.len(), survivor.type_name()))
}

fn ac3_corpus() -> Check {
    // Printed as non-KS or non-critical in their own right; covered by AC5
    // or checked for that status below.
    let non_ks = ["dim3:25-16yuoh", "dim16:80-21", "dim16:80-22"];
    let non_critical = ["dim32:160-21"];
    let mut failures = Vec::new();
    let mut checked = 0;
    for e in corpus::entries() {
        let key = e.key();
        if e.file == "masters" || non_ks.contains(&key.as_str()) {
            continue;
        }
        checked += 1;
        let h = &e.hypergraph;
        if let Some((v, m)) = e.declared_counts() {
            if (v, m) != (h.n_vertices(), h.n_edges()) {
                failures.push(format!("{key} is {}", h.type_name()));
            }
        }
        match solver::criticality_limited(h, Limits::within(SET_BUDGET)) {
            Ok(c) if c.is_critical == !non_critical.contains(&key.as_str()) => {}
            Ok(c) => failures.push(format!("{key} critical={}", c.is_critical)),
            Err(solver::SolverError::NotKs) => {
                let w = solver::is_ks(h).witness.expect("witness");
                if is_full_assignment(h, &w.ones) {
                    failures.push(format!("{key} is not KS"));
                } else {
                    failures.push(format!("{key} has a bad witness"));
                }
            }
            Err(solver::SolverError::Timeout) => failures.push(format!("{key} timed out")),
        }
    }
    let n = failures.len();
    Check::from_failures(failures, format!("{checked} strings checked, {} clean", checked - n))
}

fn ac4_parity() -> Check {
    let mut failures = Vec::new();
    let mut with = vec!["class-24-24:18-9".to_string()];
    with.extend(["20-11/1", "20-11/2", "22-13/1", "22-13/2", "24-15"].iter().map(|s| format!("class-24-24:{s}")));
    let master = registry_master("24-24");
    let closure = generate_class(&master, &GenerateOptions::new(StripPlan::Closure)).expect("closure runs");
    let mut cases: Vec<(String, Hypergraph, bool)> = with.iter().map(|k| (k.clone(), fixture(k), true)).collect();
    cases.extend(closure.criticals.representatives().map(|(h, _)| (format!("generated {}", h.type_name()), h.clone(), true)));
    cases.push(("class-60-74:39-23".into(), fixture("class-60-74:39-23"), false));
    cases.extend(corpus::file_entries("class-148-265").into_iter().map(|e| (e.key(), e.hypergraph, false)));
    for (key, h, expect) in &cases {
        let cert = has_parity_proof(h);
        if cert.is_some() != *expect || odd_even_cover_exists(h) != *expect {
            failures.push(format!("{key} parity={}", cert.is_some()));
        }
        if let Some(c) = cert {
            let mut cover = vec![0usize; h.n_vertices()];
            c.edges.iter().flat_map(|&e| h.edge(e)).for_each(|&v| cover[v] += 1);
            if c.edges.len() % 2 == 0 || cover.iter().any(|n| n % 2 == 1) {
                failures.push(format!("{key} certificate does not check"));
            }
        }
    }
    let h = fixture("class-60-74:26-13");
    let degrees_even = (0..h.n_vertices()).all(|v| h.degree(v) % 2 == 0);
    if !whole_set_parity(&h) || !(degrees_even && h.n_edges() % 2 == 1) {
        failures.push("26-13 whole-set parity".into());
    }
    Check::from_failures(failures, format!("{} sets, 26-13 whole-set parity", cases.len()))
}

fn ac5_non_ks() -> Check {
    let mut failures = Vec::new();
    for key in ["dim16:80-21", "dim16:80-22", "dim3:25-16yuoh"] {
        let h = fixture(key);
        match solver::is_ks(&h).witness {
            Some(w) if is_full_assignment(&h, &w.ones) => {}
            _ => failures.push(format!("{key} has no verified witness")),
        }
    }
    let planat = fixture("dim16:80-21");
    let stated: Vec<usize> = ["G", "H", "Y", "o", "r", "u"].iter().map(|l| planat.vertex(l).expect("label")).collect();
    if !is_full_assignment(&planat, &stated) {
        failures.push("80-21 stated assignment".into());
    }
    for key in ["dim3:49-36", "dim3:51-37", "dim3:57-40", "dim3:192-118"] {
        let h = fixture(key);
        match solver::criticality_limited(&h, Limits::within(LARGE_3DIM_BUDGET)) {
            Ok(c) if c.is_critical => {}
            other => failures.push(format!("{key}: {other:?}")),
        }
    }
    Check::from_failures(failures, "80-21, 80-22, 25-16 non-KS; four 3-dim sets KS and critical".into())
}

fn ac6_loops() -> Check {
    let mut failures = Vec::new();
    let mut found = Vec::new();
    for (key, expect) in [("class-24-24:18-9", 6), ("class-60-74:26-13", 8), ("class-60-74:60-41", 17), ("class-60-74:54-30", 18)] {
        let h = fixture(key);
        let l = maximal_loop_limited(&h, Limits::within(SET_BUDGET), None);
        if !l.exact || l.len() != expect || !is_valid_loop(&h, &l.edges, &l.vertices) {
            failures.push(format!("{key} loop {} exact={}", l.len(), l.exact));
        }
        found.push(format!("{}:{}", h.type_name(), l.len()));
    }
    Check::from_failures(failures, format!("maximal loops {}", found.join(" ")))
}

fn ac7_coordinates() -> Check {
    let mut failures = Vec::new();
    let printed = [
        ("18-9c", "class-60-105:18-9c"),
        ("20-11a", "class-60-105:20-11a"),
        ("20-11b", "class-60-105:20-11b"),
        ("21-7star", "dim6:21-7star"),
        ("36-9tri", "dim8:36-9triangle"),
        ("36-9star", "dim8:36-9star"),
    ];
    for (id, key) in printed {
        let h = fixture(key);
        let text = corpus::coordinates(id).expect("bundled");
        let va = parse_coordinates(text).expect("parses");
        if !verify_coordinatization(&h, &va).is_valid() || !floats_realize(&h, &float_vectors(text)) {
            failures.push(format!("{id} does not verify"));
        }
    }
    let mut found = Vec::new();
    for (key, alphabet, dim) in [("class-24-24:18-9", "pm1", 4), ("dim6:21-7star", "omega", 6)] {
        let h = fixture(key);
        let a = ComponentAlphabet::named(alphabet).expect("builtin");
        let t = Instant::now();
        match find_coordinatization(&h, &a, dim, None, Limits::within(FIND_BUDGET)) {
            Ok(o) => match o.assignment {
                Some(va) if verify_coordinatization(&h, &va).is_valid() && floats_realize(&h, &float_vectors(&format_all(&va, &h))) => {
                    found.push(format!("{} over {alphabet} in {:.1}s", h.type_name(), t.elapsed().as_secs_f64()))
                }
                _ => failures.push(format!("{key} over {alphabet}: none")),
            },
            Err(e) => failures.push(format!("{key} over {alphabet}: {e}")),
        }
    }
    Check::from_failures(failures, format!("6 printed assignments; found {}", found.join(", ")))
}

fn format_all(va: &VectorAssignment, h: &Hypergraph) -> String {
    mmpks::vector::format_coordinates(va, Some(h))
}

fn ac8_subgraphs() -> Check {
    let mut failures = Vec::new();
    let mut times = Vec::new();
    let queries = [("class-24-24:18-9", "24-24", true), ("dim6:21-7star", "236-1216", false), ("dim8:36-9star", "120-2024", false)];
    for (guest, host, expect) in queries {
        let a = fixture(guest);
        let b = registry_master(host);
        let t = Instant::now();
        match find_embedding(&a, &b, Limits::within(SUBGRAPH_BUDGET)) {
            Ok(Some(e)) if expect && embedding_holds(&a, &b, &e.vertex_map, &e.edge_map) => {}
            Ok(None) if !expect => {}
            Ok(r) => failures.push(format!("{guest} in {host}: {}", r.is_some())),
            Err(_) => failures.push(format!("{guest} in {host}: timed out")),
        }
        times.push(format!("{} in {host} {expect} {:.1}s", a.type_name(), t.elapsed().as_secs_f64()));
    }
    Check::from_failures(failures, times.join("; "))
}

fn ac9_properties() -> Check {
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);

    let mut ks = 0;
    let cases = 10_000;
    for i in 0..cases {
        let n = rng.gen_range(3..=14);
        let m = rng.gen_range(1..=12);
        let h = random_hypergraph(&mut rng, n, m, 2..=4);
        let verdict = solver::is_ks(&h);
        let brute = brute_force_non_ks(&h);
        if verdict.is_ks != brute.is_none() || verdict.witness.as_ref().is_some_and(|w| !is_full_assignment(&h, &w.ones)) {
            failures.push(format!("solver case {i}: {}", h.to_plain_mmp()));
        }
        ks += verdict.is_ks as usize;
        if i % 10 == 0 {
            let edges: Vec<u64> = h.edges().iter().map(|e| e.iter().fold(0u64, |a, &v| a | 1 << v)).collect();
            let best = (0u64..1 << h.n_vertices())
                .filter(|&o| edges.iter().all(|&e| (o & e).count_ones() <= 1))
                .map(|o| edges.iter().filter(|&&e| (o & e).count_ones() == 1).count())
                .max()
                .unwrap_or(0);
            if solver::max_ones_witness(&h).satisfied != best {
                failures.push(format!("max-ones case {i}"));
            }
        }
    }

    let mut parity_cases = 0;
    for i in 0..300 {
        let n = rng.gen_range(3..=24);
        let m = rng.gen_range(1..=20);
        let h = random_hypergraph(&mut rng, n, m, 2..=4);
        parity_cases += 1;
        let brute = brute_force_parity(&h);
        let got = has_parity_proof(&h);
        let ok = match (&got, brute) {
            (None, None) => true,
            (Some(c), Some(b)) => c.verify(&h) && (!c.minimum || c.len() == b) && c.len() >= b,
            _ => false,
        };
        if !ok {
            failures.push(format!("parity case {i}: {}", h.to_plain_mmp()));
        }
    }
    for e in corpus::entries().into_iter().filter(|e| e.hypergraph.n_edges() <= 20 && e.hypergraph.n_vertices() <= 128) {
        parity_cases += 1;
        let brute = brute_force_parity(&e.hypergraph);
        if has_parity_proof(&e.hypergraph).map(|c| c.verify(&e.hypergraph)) != brute.map(|_| true) {
            failures.push(format!("parity {}", e.key()));
        }
    }

    let entries = corpus::entries();
    for e in &entries {
        let f = canonical_form(&e.hypergraph);
        for _ in 0..100 {
            if canonical_form(&relabelled(&e.hypergraph, &mut rng)) != f {
                failures.push(format!("canonical form of {} changes under relabelling", e.key()));
                break;
            }
        }
    }
    // Small graphs, many of them isomorphic, compared pairwise.
    let mut pool: Vec<Hypergraph> = Vec::new();
    while pool.len() < 90 {
        let (n, m) = (rng.gen_range(3..=8), rng.gen_range(1..=5));
        let h = random_hypergraph(&mut rng, n, m, 2..=3);
        pool.push(relabelled(&h, &mut rng));
        pool.push(relabelled(&h, &mut rng));
        let mut edges = h.edges().to_vec();
        if let Some(e) = edges.first_mut() {
            e.pop();
            if e.len() >= 2 {
                pool.push(Hypergraph::from_index_edges(h.n_vertices(), edges));
            }
        }
    }
    pool.retain(|h| (0..h.n_vertices()).all(|v| h.degree(v) > 0));
    let forms: Vec<_> = pool.iter().map(canonical_form).collect();
    let mut iso_pairs = 0;
    for i in 0..pool.len() {
        for j in i + 1..pool.len() {
            let brute = brute_force_isomorphic(&pool[i], &pool[j]);
            iso_pairs += brute as usize;
            if (forms[i] == forms[j]) != brute {
                failures.push(format!("canonical completeness: {} vs {}", pool[i].to_plain_mmp(), pool[j].to_plain_mmp()));
            }
        }
    }

    let master = registry_master("60-74");
    let runs = [
        StripPlan::Random { k: 30, samples: 300, seed: 7 },
        StripPlan::Exhaustive { k_min: 0, k_max: 2 },
    ];
    for plan in runs {
        let outputs: Vec<(String, String)> = [1, 4]
            .iter()
            .map(|&jobs| {
                let mut opts = GenerateOptions::new(plan.clone());
                opts.jobs = jobs;
                opts.chunk = 64;
                opts.reduction = Reduction::Seeded(11);
                let out = generate_class(&master, &opts).expect("runs");
                (out.stats.to_tsv(), write_criticals(&out.criticals, master.dimension()))
            })
            .collect();
        if outputs[0] != outputs[1] {
            failures.push(format!("{plan} differs between 1 and 4 workers"));
        }
        let reloaded = load_criticals(&outputs[0].1).expect("reloads");
        for (h, _) in reloaded.representatives() {
            if !solver::criticality(h).is_ok_and(|c| c.is_critical) {
                failures.push(format!("{plan} emitted a non-critical {}", h.type_name()));
            }
        }
    }

    let detail = format!(
        "{cases} solver cases ({ks} KS), {parity_cases} parity cases, {} entries x100 relabellings, {} small graphs ({iso_pairs} isomorphic pairs), determinism over 1 and 4 workers",
        entries.len(),
        pool.len()
    );
    failures.truncate(20);
    Check::from_failures(failures, detail)
}
