//! Constrained level planarity: per-level partial orders on the vertices.

use serde::{Deserialize, Serialize};
use serde_json::json;

use super::{solve_triples, ConstraintTriple, Outcome, SolverError};
use crate::embedding::{embedding_to_drawing, is_level_planar_drawing, LevelDrawing};
use crate::levelgraph::{EdgeId, GraphJson, LevelGraph, VertexId};
use crate::lptree::{build_lp_tree, LpError, LpTree};

/// A graph with required pairs `u ≺ v`: `u` left of `v` on their level.
#[derive(Clone, Debug)]
pub struct ClgInstance {
    pub graph: LevelGraph,
    pub constraints: Vec<(VertexId, VertexId)>,
}

#[derive(Serialize, Deserialize)]
struct ClgJson {
    graph: GraphJson,
    constraints: Vec<(String, String)>,
}

impl ClgInstance {
    pub fn new(graph: LevelGraph, constraints: Vec<(VertexId, VertexId)>) -> Result<Self, SolverError> {
        for &(u, v) in &constraints {
            check_pair(&graph, u, v)?;
        }
        Ok(ClgInstance { graph, constraints })
    }

    pub fn from_json(text: &str) -> Result<Self, SolverError> {
        let raw: ClgJson = serde_json::from_str(text).map_err(|e| SolverError::Input(e.to_string()))?;
        let graph = raw.graph.into_graph()?;
        let idx = |v: &str| graph.vertex_index(v).ok_or_else(|| SolverError::Input(format!("unknown vertex `{v}`")));
        let constraints =
            raw.constraints.iter().map(|(a, b)| Ok((idx(a)?, idx(b)?))).collect::<Result<Vec<_>, SolverError>>()?;
        ClgInstance::new(graph, constraints)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let g = &self.graph;
        json!({
            "graph": g.to_json_value(),
            "constraints": self.constraints.iter().map(|&(u, v)| json!([g.id(u), g.id(v)])).collect::<Vec<_>>(),
        })
    }
}

fn check_pair(g: &LevelGraph, u: VertexId, v: VertexId) -> Result<(), SolverError> {
    if u >= g.n() || v >= g.n() {
        return Err(SolverError::Input("constraint names an unknown vertex".into()));
    }
    if u == v {
        return Err(SolverError::Input(format!("constraint relates `{}` to itself", g.id(u))));
    }
    if g.level(u) != g.level(v) {
        return Err(SolverError::Input(format!(
            "`{}` (level {}) and `{}` (level {}) are on different levels",
            g.id(u),
            g.level(u),
            g.id(v),
            g.level(v)
        )));
    }
    Ok(())
}

/// The triple at the branching vertex of `u` and `v` that holds exactly in
/// the embeddings drawing `u` left of `v`.
pub fn translate_order_constraint(g: &LevelGraph, u: VertexId, v: VertexId) -> Result<ConstraintTriple, SolverError> {
    Ok(translate_order_constraints(g, &[(u, v)])?[0])
}

/// Batched [`translate_order_constraint`]. Branching vertices are lowest
/// common ancestors in a depth-first search tree from `s`, found offline
/// with union-find; the first tree edge towards each side is found by entry
/// time among the children.
pub fn translate_order_constraints(g: &LevelGraph, pairs: &[(VertexId, VertexId)]) -> Result<Vec<ConstraintTriple>, SolverError> {
    for &(u, v) in pairs {
        check_pair(g, u, v)?;
    }
    let s = g.source().ok_or_else(|| SolverError::Input("graph must have exactly one source".into()))?;
    let n = g.n();
    let mut tree_edge: Vec<Option<EdgeId>> = vec![None; n];
    let mut kids: Vec<Vec<VertexId>> = vec![Vec::new(); n];
    let mut tin = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut stack: Vec<(VertexId, usize)> = vec![(s, 0)];
    tin[s] = 0;
    order.push(s);
    while let Some(&mut (v, ref mut i)) = stack.last_mut() {
        let outs = g.incident(v);
        if *i == outs.len() {
            stack.pop();
            continue;
        }
        let e = outs[*i];
        *i += 1;
        let (a, w) = g.edge(e);
        if a != v || tin[w] != usize::MAX {
            continue;
        }
        tin[w] = order.len();
        order.push(w);
        tree_edge[w] = Some(e);
        kids[v].push(w);
        stack.push((w, 0));
    }
    if order.len() != n {
        return Err(SolverError::Input("some vertex is unreachable from the source".into()));
    }

    // offline lowest common ancestors
    let mut queries: Vec<Vec<(VertexId, usize)>> = vec![Vec::new(); n];
    for (q, &(u, v)) in pairs.iter().enumerate() {
        queries[u].push((v, q));
        queries[v].push((u, q));
    }
    let mut uf: Vec<usize> = (0..n).collect();
    fn find(uf: &mut [usize], mut x: usize) -> usize {
        while uf[x] != x {
            uf[x] = uf[uf[x]];
            x = uf[x];
        }
        x
    }
    let mut anc: Vec<VertexId> = (0..n).collect();
    let mut done = vec![false; n];
    let mut lca = vec![usize::MAX; pairs.len()];
    let mut stack: Vec<(VertexId, usize)> = vec![(s, 0)];
    while let Some(&mut (v, ref mut i)) = stack.last_mut() {
        if *i < kids[v].len() {
            let c = kids[v][*i];
            *i += 1;
            stack.push((c, 0));
            continue;
        }
        stack.pop();
        done[v] = true;
        for &(o, q) in &queries[v] {
            if done[o] {
                let r = find(&mut uf, o);
                lca[q] = anc[r];
            }
        }
        if let Some(&(p, _)) = stack.last() {
            let (a, b) = (find(&mut uf, v), find(&mut uf, p));
            uf[a] = b;
            anc[b] = p;
        }
    }

    let toward = |w: VertexId, x: VertexId| -> EdgeId {
        let ks = &kids[w];
        let i = ks.partition_point(|&c| tin[c] <= tin[x]) - 1;
        tree_edge[ks[i]].unwrap()
    };
    let mut out = Vec::with_capacity(pairs.len());
    for (q, &(u, v)) in pairs.iter().enumerate() {
        let w = lca[q];
        let e = toward(w, u);
        let f = toward(w, v);
        let back = if w == s {
            g.st().map(|(_, _, st)| st).ok_or_else(|| SolverError::Input("graph has no edge (s, t)".into()))?
        } else {
            g.in_edges(w).min().unwrap()
        };
        // incoming edges sit left to right before the outgoing ones from right to left
        out.push(ConstraintTriple { w, edges: [back, f, e] });
    }
    Ok(out)
}

fn satisfies(g: &LevelGraph, d: &LevelDrawing, pairs: &[(VertexId, VertexId)]) -> bool {
    let mut pos = vec![usize::MAX; g.n()];
    for row in &d.levels {
        for (i, &v) in row.iter().enumerate() {
            if v < g.n() {
                pos[v] = i;
            }
        }
    }
    pairs.iter().all(|&(u, v)| pos[u] < pos[v])
}

/// A level drawing of `G` whose level orders extend every constraint.
pub fn solve_constrained(c: &ClgInstance) -> Result<Outcome<LevelDrawing>, SolverError> {
    match build_lp_tree(&c.graph) {
        Ok(lp) => solve_constrained_with(&lp, c),
        Err(LpError::NotLevelPlanar) => Ok(Outcome::Unsat("graph is not level planar".into())),
        Err(e) => Err(e.into()),
    }
}

/// As [`solve_constrained`], with the LP-tree of `G` already built.
pub fn solve_constrained_with(lp: &LpTree, c: &ClgInstance) -> Result<Outcome<LevelDrawing>, SolverError> {
    let triples = translate_order_constraints(&c.graph, &c.constraints)?;
    let choice = match solve_triples(lp, &triples)? {
        Outcome::Sat(x) => x,
        Outcome::Unsat(r) => return Ok(Outcome::Unsat(r)),
    };
    let e = lp.realize(&choice)?;
    let d = embedding_to_drawing(&c.graph, &e)?;
    if !is_level_planar_drawing(&c.graph, &d) {
        return Err(SolverError::Verification("drawing is not level planar".into()));
    }
    if !satisfies(&c.graph, &d, &c.constraints) {
        return Err(SolverError::Verification("drawing violates an order constraint".into()));
    }
    Ok(Outcome::Sat(d))
}

/// Partial level planarity with the subgraph given by its vertex orders:
/// each list is a left-to-right sequence of vertices on one level.
pub fn solve_partial_vertex_orders(g: &LevelGraph, orders: &[Vec<VertexId>]) -> Result<Outcome<LevelDrawing>, SolverError> {
    let constraints = orders.iter().flat_map(|row| row.windows(2).map(|w| (w[0], w[1]))).collect();
    solve_constrained(&ClgInstance::new(g.clone(), constraints)?)
}
