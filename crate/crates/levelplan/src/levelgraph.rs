//! Level graphs with per-vertex demands.
//!
//! A [`LevelGraph`] is immutable once built. Vertices and edges are addressed by
//! dense indices; the string ids given by the caller are kept for I/O and for
//! comparing embeddings across derived graphs.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::embedding::RotationSystem;

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub id: String,
    pub level: u32,
    pub demand: u32,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),
    #[error("unknown vertex id `{0}`")]
    UnknownVertex(String),
    #[error("vertex `{0}` has level 0, levels start at 1")]
    ZeroLevel(String),
    #[error("vertex `{id}` has demand {demand} below its level {level}")]
    DemandBelowLevel { id: String, level: u32, demand: u32 },
    #[error("edge ({0}, {1}) does not point to a strictly higher level")]
    NotUpward(String, String),
    #[error("graph has {0} sources, expected exactly one")]
    NotSingleSource(usize),
    #[error("graph already has a vertex above level {0}")]
    AboveDemand(u32),
    #[error("graph was not produced by add_super_sink")]
    NoSuperSink,
    #[error("rotation system does not match the graph: {0}")]
    RotationMismatch(String),
    #[error("malformed graph json: {0}")]
    Json(String),
}

#[derive(Clone, Debug)]
pub struct LevelGraph {
    vertices: Vec<Vertex>,
    edges: Vec<(VertexId, VertexId)>,
    index: HashMap<String, VertexId>,
    incident: Vec<Vec<EdgeId>>,
    edge_index: HashMap<(VertexId, VertexId), EdgeId>,
    super_sink: Option<VertexId>,
}

impl LevelGraph {
    /// Builds a graph from vertices and index pairs. Every edge must point to a
    /// strictly higher level. Parallel edges are accepted here and reported by
    /// [`validate`].
    pub fn new(vertices: Vec<Vertex>, edges: Vec<(VertexId, VertexId)>) -> Result<Self, GraphError> {
        let mut index = HashMap::with_capacity(vertices.len());
        for (i, v) in vertices.iter().enumerate() {
            if v.level == 0 {
                return Err(GraphError::ZeroLevel(v.id.clone()));
            }
            if v.demand < v.level {
                return Err(GraphError::DemandBelowLevel {
                    id: v.id.clone(),
                    level: v.level,
                    demand: v.demand,
                });
            }
            if index.insert(v.id.clone(), i).is_some() {
                return Err(GraphError::DuplicateVertex(v.id.clone()));
            }
        }
        let mut incident = vec![Vec::new(); vertices.len()];
        let mut edge_index = HashMap::with_capacity(edges.len());
        for (e, &(u, v)) in edges.iter().enumerate() {
            for x in [u, v] {
                if x >= vertices.len() {
                    return Err(GraphError::UnknownVertex(format!("#{x}")));
                }
            }
            if vertices[u].level >= vertices[v].level {
                return Err(GraphError::NotUpward(vertices[u].id.clone(), vertices[v].id.clone()));
            }
            incident[u].push(e);
            incident[v].push(e);
            edge_index.entry((u, v)).or_insert(e);
        }
        Ok(LevelGraph { vertices, edges, index, incident, edge_index, super_sink: None })
    }

    /// Convenience constructor from `(id, level)` pairs and `(tail, head)` id
    /// pairs. Demands default to levels.
    pub fn from_ids(vertices: &[(&str, u32)], edges: &[(&str, &str)]) -> Result<Self, GraphError> {
        let vs = vertices
            .iter()
            .map(|&(id, level)| Vertex { id: id.to_string(), level, demand: level })
            .collect::<Vec<_>>();
        Self::from_named(vs, edges.iter().map(|&(u, v)| (u.to_string(), v.to_string())))
    }

    pub fn from_named(
        vertices: Vec<Vertex>,
        edges: impl IntoIterator<Item = (String, String)>,
    ) -> Result<Self, GraphError> {
        let index: HashMap<&str, usize> =
            vertices.iter().enumerate().map(|(i, v)| (v.id.as_str(), i)).collect();
        let mut es = Vec::new();
        for (u, v) in edges {
            let a = *index.get(u.as_str()).ok_or_else(|| GraphError::UnknownVertex(u.clone()))?;
            let b = *index.get(v.as_str()).ok_or_else(|| GraphError::UnknownVertex(v.clone()))?;
            es.push((a, b));
        }
        Self::new(vertices, es)
    }

    /// Returns a copy with the given demands (by vertex id) raised.
    pub fn with_demands(&self, demands: &[(&str, u32)]) -> Result<Self, GraphError> {
        let mut vs = self.vertices.clone();
        for &(id, d) in demands {
            let v = self.vertex_index(id).ok_or_else(|| GraphError::UnknownVertex(id.to_string()))?;
            vs[v].demand = d;
        }
        let mut g = Self::new(vs, self.edges.clone())?;
        g.super_sink = self.super_sink;
        Ok(g)
    }

    /// A copy with every demand reset to the vertex level.
    pub fn without_demands(&self) -> Self {
        let mut g = self.clone();
        for v in &mut g.vertices {
            v.demand = v.level;
        }
        g
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn vertex(&self, v: VertexId) -> &Vertex {
        &self.vertices[v]
    }

    pub fn id(&self, v: VertexId) -> &str {
        &self.vertices[v].id
    }

    pub fn level(&self, v: VertexId) -> u32 {
        self.vertices[v].level
    }

    pub fn demand(&self, v: VertexId) -> u32 {
        self.vertices[v].demand
    }

    pub fn edge(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e]
    }

    pub fn other(&self, e: EdgeId, v: VertexId) -> VertexId {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        &self.incident[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.incident[v].len()
    }

    pub fn out_edges(&self, v: VertexId) -> impl Iterator<Item = EdgeId> + '_ {
        self.incident[v].iter().copied().filter(move |&e| self.edges[e].0 == v)
    }

    pub fn in_edges(&self, v: VertexId) -> impl Iterator<Item = EdgeId> + '_ {
        self.incident[v].iter().copied().filter(move |&e| self.edges[e].1 == v)
    }

    pub fn vertex_index(&self, id: &str) -> Option<VertexId> {
        self.index.get(id).copied()
    }

    pub fn edge_between(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        self.edge_index.get(&(u, v)).or_else(|| self.edge_index.get(&(v, u))).copied()
    }

    pub fn edge_by_ids(&self, u: &str, v: &str) -> Option<EdgeId> {
        self.edge_between(self.vertex_index(u)?, self.vertex_index(v)?)
    }

    pub fn super_sink(&self) -> Option<VertexId> {
        self.super_sink
    }

    pub fn sources(&self) -> Vec<VertexId> {
        (0..self.n()).filter(|&v| self.in_edges(v).next().is_none()).collect()
    }

    /// The unique source, if there is exactly one.
    pub fn source(&self) -> Option<VertexId> {
        let s = self.sources();
        (s.len() == 1).then(|| s[0])
    }

    pub fn max_level(&self) -> u32 {
        self.vertices.iter().map(|v| v.level).max().unwrap_or(0)
    }

    pub fn max_demand(&self) -> u32 {
        self.vertices.iter().map(|v| v.demand).max().unwrap_or(0)
    }

    /// The unique vertex on the highest level, if there is exactly one.
    pub fn apex(&self) -> Option<VertexId> {
        let k = self.max_level();
        let mut top = (0..self.n()).filter(|&v| self.level(v) == k);
        let t = top.next()?;
        top.next().is_none().then_some(t)
    }

    /// `(s, t)` for a single-source graph with unique apex that contains the edge `(s, t)`.
    pub fn st(&self) -> Option<(VertexId, VertexId, EdgeId)> {
        let s = self.source()?;
        let t = self.apex()?;
        let e = *self.edge_index.get(&(s, t))?;
        Some((s, t, e))
    }

    pub fn has_demands(&self) -> bool {
        self.vertices.iter().any(|v| v.demand > v.level)
    }

    pub fn is_proper(&self) -> bool {
        self.edges.iter().all(|&(u, v)| self.level(v) == self.level(u) + 1)
    }

    /// Subgraph on all vertices with the given edges (in the given order).
    pub fn edge_subgraph(&self, edges: &[EdgeId]) -> LevelGraph {
        let es = edges.iter().map(|&e| self.edges[e]).collect();
        LevelGraph::new(self.vertices.clone(), es).expect("subgraph of a valid graph")
    }

    /// The same graph with extra edges appended after the existing ones.
    pub fn with_extra_edges(&self, extra: &[(VertexId, VertexId)]) -> Result<LevelGraph, GraphError> {
        let mut es = self.edges.clone();
        es.extend_from_slice(extra);
        LevelGraph::new(self.vertices.clone(), es)
    }

    /// The original graph of a super-sink augmentation.
    pub fn without_super_sink(&self) -> Result<LevelGraph, GraphError> {
        let t = self.super_sink.ok_or(GraphError::NoSuperSink)?;
        let m0 = self.stripped_edge_count(t)?;
        let vs = self.vertices[..t].to_vec();
        LevelGraph::new(vs, self.edges[..m0].to_vec())
    }

    fn stripped_edge_count(&self, t: VertexId) -> Result<usize, GraphError> {
        let m0 = self.m() - self.degree(t);
        if t + 1 != self.n() || self.edges[m0..].iter().any(|&(_, b)| b != t) {
            return Err(GraphError::NoSuperSink);
        }
        Ok(m0)
    }

    pub fn from_json(text: &str) -> Result<Self, GraphError> {
        let raw: GraphJson = serde_json::from_str(text).map_err(|e| GraphError::Json(e.to_string()))?;
        raw.into_graph()
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(GraphJson::from_graph(self)).expect("serializable")
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VertexJson {
    pub id: String,
    pub level: u32,
    #[serde(default)]
    pub demand: Option<u32>,
}

/// The on-disk graph format: `{"vertices":[{"id","level","demand"?}],"edges":[[u,v]]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub vertices: Vec<VertexJson>,
    pub edges: Vec<(String, String)>,
}

impl GraphJson {
    pub fn into_graph(self) -> Result<LevelGraph, GraphError> {
        let vs = self
            .vertices
            .into_iter()
            .map(|v| Vertex { demand: v.demand.unwrap_or(v.level), id: v.id, level: v.level })
            .collect();
        LevelGraph::from_named(vs, self.edges)
    }

    pub fn from_graph(g: &LevelGraph) -> Self {
        GraphJson {
            vertices: g
                .vertices
                .iter()
                .map(|v| VertexJson { id: v.id.clone(), level: v.level, demand: Some(v.demand) })
                .collect(),
            edges: g.edges.iter().map(|&(u, v)| (g.id(u).to_string(), g.id(v).to_string())).collect(),
        }
    }
}

/// Structural precondition report. Never fails; each flag lists its witnesses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diagnostics {
    pub single_source: bool,
    pub sources: Vec<String>,
    pub biconnected: bool,
    pub cut_vertices: Vec<String>,
    pub connected: bool,
    pub unique_apex: bool,
    pub apices: Vec<String>,
    pub has_st_edge: bool,
    pub proper: bool,
    pub long_edges: Vec<(String, String)>,
    pub simple: bool,
    pub parallel_edges: Vec<(String, String)>,
    pub demands_bounded: bool,
    pub excess_demands: Vec<String>,
}

impl Diagnostics {
    /// All flags needed by LP-tree construction hold (properness is not needed).
    pub fn lp_ready(&self) -> bool {
        self.single_source
            && self.biconnected
            && self.unique_apex
            && self.has_st_edge
            && self.simple
            && self.demands_bounded
    }
}

pub fn validate(g: &LevelGraph) -> Diagnostics {
    let ids = |vs: &[VertexId]| vs.iter().map(|&v| g.id(v).to_string()).collect::<Vec<_>>();
    let sources = g.sources();
    let k = g.max_level();
    let apices: Vec<_> = (0..g.n()).filter(|&v| g.level(v) == k).collect();
    let long_edges: Vec<_> = g
        .edges()
        .iter()
        .filter(|&&(u, v)| g.level(v) != g.level(u) + 1)
        .map(|&(u, v)| (g.id(u).to_string(), g.id(v).to_string()))
        .collect();
    let mut seen = HashMap::new();
    let mut parallel_edges = Vec::new();
    for &(u, v) in g.edges() {
        let c = seen.entry((u.min(v), u.max(v))).or_insert(0usize);
        *c += 1;
        if *c == 2 {
            parallel_edges.push((g.id(u).to_string(), g.id(v).to_string()));
        }
    }
    let (connected, cuts) = cut_vertices(g);
    let excess: Vec<_> = (0..g.n())
        .filter(|&v| g.demand(v) > k || (g.level(v) < k && g.demand(v) >= k))
        .collect();
    let single_source = sources.len() == 1;
    let unique_apex = apices.len() == 1;
    let has_st_edge = single_source && unique_apex && g.edge_between(sources[0], apices[0]).is_some();
    Diagnostics {
        single_source,
        sources: ids(&sources),
        biconnected: connected && cuts.is_empty() && g.n() >= 3,
        cut_vertices: ids(&cuts),
        connected,
        unique_apex,
        apices: ids(&apices),
        has_st_edge,
        proper: long_edges.is_empty(),
        long_edges,
        simple: parallel_edges.is_empty(),
        parallel_edges,
        demands_bounded: excess.is_empty(),
        excess_demands: ids(&excess),
    }
}

/// Connectivity of the underlying undirected graph and its cut vertices.
pub(crate) fn cut_vertices(g: &LevelGraph) -> (bool, Vec<VertexId>) {
    let n = g.n();
    if n == 0 {
        return (false, Vec::new());
    }
    let mut num = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut is_cut = vec![false; n];
    let mut counter = 0;
    // (vertex, parent edge, next incident position)
    let mut stack: Vec<(VertexId, EdgeId, usize)> = vec![(0, usize::MAX, 0)];
    num[0] = 0;
    low[0] = 0;
    counter += 1;
    let mut root_children = 0;
    while let Some(top) = stack.last_mut() {
        let (v, pe, i) = *top;
        if i < g.degree(v) {
            top.2 += 1;
            let e = g.incident(v)[i];
            if e == pe {
                continue;
            }
            let w = g.other(e, v);
            if num[w] == usize::MAX {
                num[w] = counter;
                low[w] = counter;
                counter += 1;
                if v == 0 {
                    root_children += 1;
                }
                stack.push((w, e, 0));
            } else {
                low[v] = low[v].min(num[w]);
            }
        } else {
            stack.pop();
            if let Some(&(p, _, _)) = stack.last() {
                low[p] = low[p].min(low[v]);
                if p != 0 && low[v] >= num[p] {
                    is_cut[p] = true;
                }
            }
        }
    }
    if root_children > 1 {
        is_cut[0] = true;
    }
    let connected = counter == n;
    (connected, (0..n).filter(|&v| is_cut[v]).collect())
}

/// Adds a new apex one level above every demand, joined to every vertex on the
/// current top level and to the source.
pub fn add_super_sink(g: &LevelGraph) -> Result<LevelGraph, GraphError> {
    let sources = g.sources();
    if sources.len() != 1 {
        return Err(GraphError::NotSingleSource(sources.len()));
    }
    let s = sources[0];
    let d = g.max_demand();
    if g.max_level() > d {
        return Err(GraphError::AboveDemand(d));
    }
    let mut id = String::from("t");
    while g.vertex_index(&id).is_some() {
        id.push('\'');
    }
    let t = g.n();
    let mut vs = g.vertices.clone();
    vs.push(Vertex { id, level: d + 1, demand: d + 1 });
    let k = g.max_level();
    let mut es = g.edges.clone();
    for v in 0..g.n() {
        if g.level(v) == k {
            es.push((v, t));
        }
    }
    if g.level(s) != k {
        es.push((s, t));
    }
    let mut out = LevelGraph::new(vs, es)?;
    out.super_sink = Some(t);
    Ok(out)
}

/// Deletes the super-sink's edge ends from every rotation. The result is a
/// rotation system of [`LevelGraph::without_super_sink`].
pub fn strip_super_sink(g: &LevelGraph, e: &RotationSystem) -> Result<RotationSystem, GraphError> {
    let t = g.super_sink.ok_or(GraphError::NoSuperSink)?;
    let m0 = g.stripped_edge_count(t)?;
    if e.rotations().len() != g.n() {
        return Err(GraphError::RotationMismatch("vertex count differs".into()));
    }
    let mut rot = Vec::with_capacity(t);
    for v in 0..t {
        let mut r = Vec::with_capacity(e.rotation(v).len());
        for &x in e.rotation(v) {
            if x >= g.m() {
                return Err(GraphError::RotationMismatch(format!("unknown edge #{x}")));
            }
            if x < m0 {
                r.push(x);
            }
        }
        rot.push(r);
    }
    Ok(RotationSystem::from_lists(rot))
}

/// Correspondence between a graph and its properization.
#[derive(Clone, Debug)]
pub struct ProperMap {
    /// For each original edge, the chain of proper edges from bottom to top.
    pub chains: Vec<Vec<EdgeId>>,
    /// For each proper edge, the original edge it subdivides.
    pub origin: Vec<EdgeId>,
    /// Number of original vertices; proper vertices at or above this index are dummies.
    pub originals: usize,
}

impl ProperMap {
    pub fn is_dummy(&self, v: VertexId) -> bool {
        v >= self.originals
    }
}

/// Subdivides every edge spanning more than one level with one dummy vertex
/// per intermediate level. Original vertex and edge order is kept: vertex `i`
/// of `g` is vertex `i` of the result.
pub fn properize(g: &LevelGraph) -> (LevelGraph, ProperMap) {
    let mut vs = g.vertices.clone();
    let mut used: std::collections::HashSet<String> = vs.iter().map(|v| v.id.clone()).collect();
    let mut es = Vec::with_capacity(g.m());
    let mut chains = Vec::with_capacity(g.m());
    let mut origin = Vec::with_capacity(g.m());
    for (e, &(u, v)) in g.edges.iter().enumerate() {
        let mut chain = Vec::new();
        let mut prev = u;
        for lvl in g.level(u) + 1..g.level(v) {
            let mut id = format!("{}~{}@{}", g.id(u), g.id(v), lvl);
            while used.contains(&id) {
                id.push('#');
            }
            used.insert(id.clone());
            let d = vs.len();
            vs.push(Vertex { id, level: lvl, demand: lvl });
            chain.push(es.len());
            origin.push(e);
            es.push((prev, d));
            prev = d;
        }
        chain.push(es.len());
        origin.push(e);
        es.push((prev, v));
        chains.push(chain);
    }
    let mut out = LevelGraph::new(vs, es).expect("properization keeps edges upward");
    out.super_sink = g.super_sink;
    (out, ProperMap { chains, origin, originals: g.n() })
}
