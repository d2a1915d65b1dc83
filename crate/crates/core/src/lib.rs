//! Hecke-Kiselman monoids of directed graphs: presentations, normal forms via
//! Knuth-Bendix completion, integer matrix representations and exact counting.

pub mod cli;
pub mod combinatorics;
pub mod error;
pub mod families;
pub mod graph;
pub mod matrix;
pub mod presentation;
pub mod representation;
pub mod rewrite;
pub mod word;

pub use error::{HkError, Result};
pub use graph::{DirectedGraph, SubgraphSpec, VertexId, VertexSet};
pub use word::Word;
