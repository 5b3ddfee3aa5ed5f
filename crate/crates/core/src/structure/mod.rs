//! Isomorphism, containment and loop structure of hypergraphs.

pub mod canon;
pub mod loops;
pub mod subgraph;

pub use canon::{are_isomorphic, canonical_form, canonical_labeling, dedup, edge_orbits, CanonicalForm, DedupStore};
pub use loops::{is_loop, maximal_loop, maximal_loop_limited, LoopReport};
pub use subgraph::{find_embedding, is_subgraph, BudgetExhausted, Embedding};
