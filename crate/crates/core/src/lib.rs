//! Exact longest-cycle transversals on small graphs, together with the
//! structures used to reason about them: cycle classification against vertex
//! sets, tree decompositions, chordal graphs and clique trees.
//!
//! Graphs hold at most [`MAX_VERTICES`] vertices; every search is exhaustive.

pub mod chordal;
pub mod cycles;
pub mod error;
pub mod fixtures;
pub mod gen;
pub mod graph;
pub mod hitting_set;
pub mod io;
pub mod lemmas;
pub mod transversal;
pub mod treedec;
pub mod verify;
pub mod vertex_set;

pub use error::{Error, Result};
pub use graph::Graph;
pub use vertex_set::{VertexSet, MAX_VERTICES};
