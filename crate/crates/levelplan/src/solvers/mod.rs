//! Partial, constrained and simultaneous level planarity on top of LP-trees.
//!
//! All three reduce to triple constraints: a vertex `w` and three incident
//! edges that must appear in a given counter-clockwise order around `w`.
//! Each triple lands on a single LP-tree node, the median of the three leaves
//! holding its edges, where it either fixes the orientation of an R-node or
//! restricts the child order of a P-node.

use thiserror::Error;

use crate::embedding::EmbeddingError;
use crate::levelgraph::{EdgeId, GraphError, VertexId};
use crate::lptree::LpError;

mod constrained;
mod partial;
mod simultaneous;
mod triples;
mod twosat;

pub use constrained::{
    solve_constrained, solve_constrained_with, solve_partial_vertex_orders, translate_order_constraint,
    translate_order_constraints, ClgInstance,
};
pub use partial::{extends, solve_partial, solve_partial_with, PegInstance};
pub use simultaneous::{solve_simultaneous, SefeFailure, SefeInstance, SefeWitness};
pub use triples::{solve_triples, Placement, TripleLocator};
pub use twosat::{twosat_solve, Contradiction, Lit, TwoSatInstance};

/// Edges `edges[0]`, `edges[1]`, `edges[2]` must appear in this
/// counter-clockwise cyclic order around `w`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConstraintTriple {
    pub w: VertexId,
    pub edges: [EdgeId; 3],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome<T> {
    Sat(T),
    Unsat(String),
}

impl<T> Outcome<T> {
    pub fn is_sat(&self) -> bool {
        matches!(self, Outcome::Sat(_))
    }

    pub fn sat(self) -> Option<T> {
        match self {
            Outcome::Sat(t) => Some(t),
            Outcome::Unsat(_) => None,
        }
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Outcome<U> {
        match self {
            Outcome::Sat(t) => Outcome::Sat(f(t)),
            Outcome::Unsat(r) => Outcome::Unsat(r),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolverError {
    #[error("invalid instance: {0}")]
    Input(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Lp(LpError),
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
    #[error("search exceeded {0} steps")]
    SearchLimit(u64),
    #[error("witness failed verification: {0}")]
    Verification(String),
}

impl From<LpError> for SolverError {
    fn from(e: LpError) -> Self {
        match e {
            LpError::SearchLimit(n) => SolverError::SearchLimit(n),
            e => SolverError::Lp(e),
        }
    }
}
