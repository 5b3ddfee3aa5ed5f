//! Inputs shared by the benchmarks in `benches/`.

use mmpks::corpus::fixture;
use mmpks::pipeline::MasterRegistry;
use mmpks::Hypergraph;

/// A registered master by name.
pub fn master(name: &str) -> Hypergraph {
    MasterRegistry::default().load(name).unwrap_or_else(|e| panic!("{name}: {e}")).hypergraph
}

/// Corpus sets spanning small, mid-size and large criticals.
pub fn criticals() -> Vec<(&'static str, Hypergraph)> {
    ["class-24-24:18-9", "class-60-74:39-23", "class-60-74:60-41", "class-300-675:240-156", "dim3:192-118"]
        .into_iter()
        .map(|k| (k, fixture(k)))
        .collect()
}
