//! Level-planar embeddings of single-source level graphs.
//!
//! The central structure is the LP-tree ([`lptree::LpTree`]), a decomposition
//! tree in the style of SPQR-trees whose choices (child orders at P-nodes,
//! flips at R-nodes) range over exactly the level-planar embeddings of a
//! biconnected single-source level graph with a unique apex `t` and an edge
//! `(s, t)`. On top of it sit solvers for partial, constrained and
//! simultaneous level planarity, and a brute-force oracle that enumerates
//! level drawings directly.

pub mod cli;
pub mod decomposition;
pub mod embedding;
pub mod fixtures;
pub mod generate;
pub mod levelgraph;
pub mod lptree;
pub mod oracle;
pub mod solvers;

pub use embedding::{LevelDrawing, RotationSystem};
pub use levelgraph::{validate, LevelGraph};
