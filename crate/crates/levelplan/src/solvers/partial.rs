//! Partially embedded level graphs: extend a fixed embedding of a subgraph.

use serde::{Deserialize, Serialize};
use serde_json::json;

use super::{solve_triples, ConstraintTriple, Outcome, SolverError};
use crate::embedding::{is_level_planar_embedding, RotationSystem};
use crate::levelgraph::{EdgeId, GraphJson, LevelGraph, VertexId};
use crate::lptree::{build_lp_tree, LpError, LpTree};

/// A graph `G`, a subgraph `H` given by its edges, and counter-clockwise
/// rotations of `H` at every vertex.
#[derive(Clone, Debug)]
pub struct PegInstance {
    pub graph: LevelGraph,
    pub subgraph: Vec<EdgeId>,
    /// Per vertex of `G`, the `H`-edges at it in counter-clockwise order.
    pub rotation: Vec<Vec<EdgeId>>,
}

#[derive(Serialize, Deserialize)]
struct PegJson {
    graph: GraphJson,
    subgraph: Vec<(String, String)>,
    #[serde(default)]
    rotation: std::collections::BTreeMap<String, Vec<(String, String)>>,
}

impl PegInstance {
    /// Checks that `rotation[v]` lists exactly the `H`-edges at `v`.
    /// Rotations of vertices with at most two `H`-edges may be left empty.
    pub fn new(graph: LevelGraph, subgraph: Vec<EdgeId>, mut rotation: Vec<Vec<EdgeId>>) -> Result<Self, SolverError> {
        let mut in_h = vec![false; graph.m()];
        for &e in &subgraph {
            if e >= graph.m() {
                return Err(SolverError::Input(format!("unknown edge #{e}")));
            }
            if std::mem::replace(&mut in_h[e], true) {
                return Err(SolverError::Input(format!("edge {} listed twice", edge_name(&graph, e))));
            }
        }
        rotation.resize(graph.n(), Vec::new());
        for v in 0..graph.n() {
            let mut at: Vec<EdgeId> = graph.incident(v).iter().copied().filter(|&e| in_h[e]).collect();
            if rotation[v].is_empty() && at.len() <= 2 {
                rotation[v] = at;
                continue;
            }
            let mut got = rotation[v].clone();
            at.sort_unstable();
            got.sort_unstable();
            if at != got {
                return Err(SolverError::Input(format!(
                    "rotation at `{}` must list exactly its {} subgraph edges",
                    graph.id(v),
                    at.len()
                )));
            }
        }
        Ok(PegInstance { graph, subgraph, rotation })
    }

    /// `H` and its rotations taken from an embedding of `G`.
    pub fn from_embedding(graph: LevelGraph, subgraph: Vec<EdgeId>, e: &RotationSystem) -> Result<Self, SolverError> {
        let mut keep = vec![false; graph.m()];
        for &x in &subgraph {
            if x < keep.len() {
                keep[x] = true;
            }
        }
        let rot = e.restrict(&keep).rotations().to_vec();
        PegInstance::new(graph, subgraph, rot)
    }

    pub fn from_json(text: &str) -> Result<Self, SolverError> {
        let raw: PegJson = serde_json::from_str(text).map_err(|e| SolverError::Input(e.to_string()))?;
        let graph = raw.graph.into_graph()?;
        let edge = |(a, b): &(String, String)| {
            graph.edge_by_ids(a, b).ok_or_else(|| SolverError::Input(format!("no edge ({a}, {b}) in graph")))
        };
        let subgraph = raw.subgraph.iter().map(edge).collect::<Result<Vec<_>, _>>()?;
        let mut rotation = vec![Vec::new(); graph.n()];
        for (v, list) in &raw.rotation {
            let x = graph.vertex_index(v).ok_or_else(|| SolverError::Input(format!("unknown vertex `{v}`")))?;
            rotation[x] = list.iter().map(edge).collect::<Result<Vec<_>, _>>()?;
        }
        PegInstance::new(graph, subgraph, rotation)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let g = &self.graph;
        let pair = |e: EdgeId| {
            let (a, b) = g.edge(e);
            json!([g.id(a), g.id(b)])
        };
        let mut rot = serde_json::Map::new();
        for v in 0..g.n() {
            if self.rotation[v].len() >= 3 {
                rot.insert(g.id(v).to_string(), self.rotation[v].iter().map(|&e| pair(e)).collect());
            }
        }
        json!({
            "graph": g.to_json_value(),
            "subgraph": self.subgraph.iter().map(|&e| pair(e)).collect::<Vec<_>>(),
            "rotation": rot,
        })
    }

    /// One triple per consecutive pair after the first edge at each vertex
    /// with at least three `H`-edges.
    pub fn triples(&self) -> Vec<ConstraintTriple> {
        let mut out = Vec::new();
        for (w, r) in self.rotation.iter().enumerate() {
            for i in 1..r.len().saturating_sub(1) {
                out.push(ConstraintTriple { w, edges: [r[0], r[i], r[i + 1]] });
            }
        }
        out
    }
}

fn edge_name(g: &LevelGraph, e: EdgeId) -> String {
    let (a, b) = g.edge(e);
    format!("({}, {})", g.id(a), g.id(b))
}

fn same_cycle(a: &[EdgeId], b: &[EdgeId]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    let Some(i) = b.iter().position(|&x| x == a[0]) else { return false };
    (0..a.len()).all(|k| a[k] == b[(i + k) % b.len()])
}

/// True if `e` restricted to `H` has the rotations of the instance.
pub fn extends(p: &PegInstance, e: &RotationSystem) -> bool {
    let mut keep = vec![false; p.graph.m()];
    for &x in &p.subgraph {
        keep[x] = true;
    }
    let r = e.restrict(&keep);
    (0..p.graph.n()).all(|v: VertexId| same_cycle(r.rotation(v), &p.rotation[v]))
}

/// A level-planar embedding of `G` extending the rotations of `H`.
pub fn solve_partial(p: &PegInstance) -> Result<Outcome<RotationSystem>, SolverError> {
    match build_lp_tree(&p.graph) {
        Ok(lp) => solve_partial_with(&lp, p),
        Err(LpError::NotLevelPlanar) => Ok(Outcome::Unsat("graph is not level planar".into())),
        Err(e) => Err(e.into()),
    }
}

/// As [`solve_partial`], with the LP-tree of `G` already built.
pub fn solve_partial_with(lp: &LpTree, p: &PegInstance) -> Result<Outcome<RotationSystem>, SolverError> {
    let choice = match solve_triples(lp, &p.triples())? {
        Outcome::Sat(c) => c,
        Outcome::Unsat(r) => return Ok(Outcome::Unsat(r)),
    };
    let e = lp.realize(&choice)?;
    if !extends(p, &e) {
        return Err(SolverError::Verification("embedding does not extend the subgraph rotations".into()));
    }
    if !is_level_planar_embedding(&p.graph, &e)? {
        return Err(SolverError::Verification("embedding is not level planar".into()));
    }
    Ok(Outcome::Sat(e))
}
