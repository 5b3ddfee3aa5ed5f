use std::fs;

use mmpks::corpus;
use mmpks::mmp::parse_mmp_file;
use mmpks::parity::has_parity_proof;
use mmpks::pipeline::{self, generate_class, ClassStatistics, GenerateOptions, MasterRegistry, Reduction, StripPlan};
use mmpks::solver;
use mmpks::{validate, ParseOptions};

#[test]
fn bundled_files_survive_a_round_trip() {
    for (file, text) in corpus::FILES {
        let recs = parse_mmp_file(text, &ParseOptions::default()).unwrap();
        let written: String = recs.iter().map(|r| format!("{}\n", r.hypergraph.to_mmp())).collect();
        let again = parse_mmp_file(&written, &ParseOptions::default()).unwrap();
        assert_eq!(recs.len(), again.len(), "{file}");
        for (a, b) in recs.iter().zip(&again) {
            assert_eq!(a.hypergraph.to_mmp(), b.hypergraph.to_mmp(), "{file}");
        }
    }
}

#[test]
fn checkpoint_directory_holds_a_consistent_run() {
    let dir = tempfile::tempdir().unwrap();
    let master = MasterRegistry::default().load("60-74").unwrap().hypergraph;
    let mut opts = GenerateOptions::new(StripPlan::Random { k: 25, samples: 80, seed: 3 });
    opts.reduction = Reduction::Seeded(1);
    opts.chunk = 16;
    opts.checkpoint = Some(dir.path().to_path_buf());
    let out = generate_class(&master, &opts).unwrap();
    assert_eq!(out.items, 80);
    assert!(out.failures.is_empty());

    let stats = ClassStatistics::from_tsv(&fs::read_to_string(dir.path().join("stats.tsv")).unwrap()).unwrap();
    assert_eq!(stats.to_tsv(), out.stats.to_tsv());
    let corpus = pipeline::load_criticals(&fs::read_to_string(dir.path().join("criticals.mmp")).unwrap()).unwrap();
    assert_eq!(corpus.len(), out.criticals.len());
    assert_eq!(stats.total(), corpus.len());

    // Every emitted critical re-validates and sits in its statistics cell.
    let mut parity = 0;
    for (h, _) in corpus.representatives() {
        assert!(validate(h, Some(4)).is_valid());
        assert!(solver::criticality(h).unwrap().is_critical);
        assert!(stats.count(h.n_vertices(), h.n_edges()) > 0);
        parity += has_parity_proof(h).is_some() as usize;
    }
    assert_eq!(stats.parity_fraction().map(|f| (f * corpus.len() as f64).round() as usize), Some(parity));

    // A finished run resumes to the same answer without redoing work.
    let again = generate_class(&master, &opts).unwrap();
    assert_eq!(again.stats.to_tsv(), out.stats.to_tsv());
}

#[test]
fn exhaustive_coverage_matches_binomials() {
    let master = corpus::fixture("masters:24-24");
    let plan = StripPlan::Exhaustive { k_min: 0, k_max: 3 };
    let count = pipeline::strip(&master, &plan).unwrap().count();
    assert_eq!(count, 1 + 24 + 276 + 2024);
}

#[test]
fn membership_of_small_sets() {
    let master = MasterRegistry::default().load("60-105").unwrap().hypergraph;
    let limits = solver::Limits::none();
    assert_eq!(
        pipeline::class_membership(&corpus::fixture("class-24-24:18-9"), &master, limits),
        pipeline::Membership::Member
    );
    assert_eq!(pipeline::class_membership(&master, &master, limits), pipeline::Membership::Member);
}
