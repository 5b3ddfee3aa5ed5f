//! Tools for Kochen-Specker sets written as MMP hypergraphs.

pub mod bits;
pub mod corpus;
pub mod families;
pub mod label;
pub mod mmp;
pub mod parity;
pub mod pipeline;
pub mod solver;
pub mod structure;
pub mod vector;

pub use label::{Label, ALPHABET};
pub use mmp::{parse_mmp, parse_mmp_with, serialize_mmp, validate, Hypergraph, ParseError, ParseOptions};
