//! SPQR-style decomposition trees with explicit Q-nodes.
//!
//! Every node owns a skeleton: a multigraph on vertices of `G` whose edges are
//! real (an edge of `G`) or virtual (paired with a twin in the adjacent node).
//! The tree is rooted at the Q-node of a chosen edge, normally `(s, t)`.
//! Contracting all arcs (merging twin pairs) gives back `G`.
//!
//! Skeleton edges live in one arena shared by all nodes, so contracting an
//! arc only moves the child's edges to the parent. An optional embedding
//! stores, per skeleton vertex, the counter-clockwise cyclic order of edge ends.

use std::collections::{BTreeMap, VecDeque};

use serde_json::json;
use thiserror::Error;

use crate::levelgraph::{validate, EdgeId, LevelGraph, VertexId};

mod embed;
pub mod reference;
pub mod triconnected;

pub use embed::{ChoiceSpace, ChoiceVector};
pub(crate) use embed::next_permutation;
use triconnected::{CompKind, Components};

pub type NodeId = usize;
pub type SkelEdgeId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NodeKind {
    S,
    P,
    Q,
    R,
}

impl NodeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            NodeKind::S => "S",
            NodeKind::P => "P",
            NodeKind::Q => "Q",
            NodeKind::R => "R",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SkelKind {
    Real(EdgeId),
    /// Virtual edge; the payload is its twin.
    Virtual(SkelEdgeId),
}

#[derive(Clone, Debug)]
pub struct SkelEdge {
    pub node: NodeId,
    pub ends: [VertexId; 2],
    pub kind: SkelKind,
    pub(crate) alive: bool,
}

impl SkelEdge {
    pub fn side_at(&self, x: VertexId) -> usize {
        if self.ends[0] == x {
            0
        } else {
            debug_assert_eq!(self.ends[1], x);
            1
        }
    }
}

#[derive(Clone, Debug)]
pub struct TreeNode {
    pub kind: NodeKind,
    /// May contain dead entries; use [`DecompositionTree::skeleton`].
    pub(crate) edges: Vec<SkelEdgeId>,
    pub parent_edge: Option<SkelEdgeId>,
    /// Ends of the parent edge, lower level first.
    pub poles: (VertexId, VertexId),
    pub(crate) alive: bool,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecompositionError {
    #[error("graph must be simple and biconnected with at least three vertices")]
    NotBiconnected,
    #[error("no edge between the requested root endpoints")]
    NoRootEdge,
}

/// Which triconnected-components routine to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    PathSearch,
    Reference,
}

/// Cyclic orders of skeleton edge ends, indexed by `2 * edge + side`.
#[derive(Clone, Debug, Default)]
pub struct SkelEmbedding {
    pub next: Vec<usize>,
    pub prev: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct DecompositionTree {
    pub(crate) nodes: Vec<TreeNode>,
    pub(crate) sedges: Vec<SkelEdge>,
    pub(crate) root: NodeId,
    /// Skeleton edge holding each edge of `G`.
    pub(crate) real: Vec<SkelEdgeId>,
    pub(crate) levels: Vec<u32>,
    pub(crate) emb: Option<SkelEmbedding>,
}

impl DecompositionTree {
    /// SPQR-tree rooted at the Q-node of `(s, t)`, or of edge 0 if the graph
    /// has no such edge.
    pub fn build(g: &LevelGraph) -> Result<Self, DecompositionError> {
        let root = g.st().map(|(_, _, e)| e).unwrap_or(0);
        Self::build_rooted(g, root, Method::PathSearch)
    }

    pub fn build_rooted(g: &LevelGraph, root_edge: EdgeId, method: Method) -> Result<Self, DecompositionError> {
        let d = validate(g);
        if g.n() < 3 || !d.biconnected || !d.simple {
            return Err(DecompositionError::NotBiconnected);
        }
        if root_edge >= g.m() {
            return Err(DecompositionError::NoRootEdge);
        }
        let comps = match method {
            Method::PathSearch => triconnected::triconnected_components(g.n(), g.edges()),
            Method::Reference => reference::reference_components(g.n(), g.edges()),
        };
        Ok(Self::from_components(g, &comps, root_edge))
    }

    fn from_components(g: &LevelGraph, c: &Components, root_edge: EdgeId) -> Self {
        let m = g.m();
        let mut t = DecompositionTree {
            nodes: Vec::new(),
            sedges: Vec::new(),
            root: 0,
            real: vec![usize::MAX; m],
            levels: (0..g.n()).map(|v| g.level(v)).collect(),
            emb: None,
        };
        let mut first_virtual: BTreeMap<usize, SkelEdgeId> = BTreeMap::new();
        let ncomp = c.comps.len();
        for (kind, _) in &c.comps {
            let kind = match kind {
                CompKind::Bond => NodeKind::P,
                CompKind::Polygon => NodeKind::S,
                CompKind::Triconnected => NodeKind::R,
            };
            t.new_node(kind);
        }
        for (i, (_, es)) in c.comps.iter().enumerate() {
            for &e in es {
                let (a, b) = c.ends[e];
                if e < m {
                    let (a, b) = g.edge(e);
                    let q = t.new_node(NodeKind::Q);
                    let x = t.new_edge(i, [a, b], SkelKind::Virtual(usize::MAX));
                    let y = t.new_edge(q, [a, b], SkelKind::Virtual(x));
                    t.sedges[x].kind = SkelKind::Virtual(y);
                    let r = t.new_edge(q, [a, b], SkelKind::Real(e));
                    t.real[e] = r;
                } else {
                    let x = t.new_edge(i, [a, b], SkelKind::Virtual(usize::MAX));
                    if let Some(y) = first_virtual.remove(&e) {
                        t.sedges[x].kind = SkelKind::Virtual(y);
                        t.sedges[y].kind = SkelKind::Virtual(x);
                    } else {
                        first_virtual.insert(e, x);
                    }
                }
            }
        }
        debug_assert!(first_virtual.is_empty());
        t.root = t.sedges[t.real[root_edge]].node;
        debug_assert!(t.root >= ncomp);
        t.orient();
        t
    }

    fn new_node(&mut self, kind: NodeKind) -> NodeId {
        self.nodes.push(TreeNode { kind, edges: Vec::new(), parent_edge: None, poles: (0, 0), alive: true });
        self.nodes.len() - 1
    }

    fn new_edge(&mut self, node: NodeId, ends: [VertexId; 2], kind: SkelKind) -> SkelEdgeId {
        let id = self.sedges.len();
        self.sedges.push(SkelEdge { node, ends, kind, alive: true });
        self.nodes[node].edges.push(id);
        if let Some(emb) = &mut self.emb {
            for side in 0..2 {
                emb.next.push(2 * id + side);
                emb.prev.push(2 * id + side);
            }
        }
        id
    }

    fn ordered_poles(&self, a: VertexId, b: VertexId) -> (VertexId, VertexId) {
        if (self.levels[a], a) <= (self.levels[b], b) {
            (a, b)
        } else {
            (b, a)
        }
    }

    /// Sets parent edges and poles by a traversal from the root.
    fn orient(&mut self) {
        let r = self.root;
        self.nodes[r].parent_edge = None;
        let re = self.real_edge_of_root();
        let [a, b] = self.sedges[re].ends;
        self.nodes[r].poles = self.ordered_poles(a, b);
        let mut queue = VecDeque::from([r]);
        while let Some(x) = queue.pop_front() {
            let pe = self.nodes[x].parent_edge;
            for e in self.skeleton(x) {
                if Some(e) == pe {
                    continue;
                }
                if let SkelKind::Virtual(tw) = self.sedges[e].kind {
                    let c = self.sedges[tw].node;
                    self.nodes[c].parent_edge = Some(tw);
                    let [a, b] = self.sedges[tw].ends;
                    self.nodes[c].poles = self.ordered_poles(a, b);
                    queue.push_back(c);
                }
            }
        }
    }

    fn real_edge_of_root(&self) -> SkelEdgeId {
        self.skeleton(self.root)
            .into_iter()
            .find(|&e| matches!(self.sedges[e].kind, SkelKind::Real(_)))
            .expect("root carries a real edge")
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn node(&self, id: NodeId) -> &TreeNode {
        &self.nodes[id]
    }

    pub fn kind(&self, id: NodeId) -> NodeKind {
        self.nodes[id].kind
    }

    pub fn sedge(&self, id: SkelEdgeId) -> &SkelEdge {
        &self.sedges[id]
    }

    pub fn is_alive(&self, id: NodeId) -> bool {
        self.nodes[id].alive
    }

    /// Skeleton edge that holds edge `e` of `G`.
    pub fn real_sedge(&self, e: EdgeId) -> SkelEdgeId {
        self.real[e]
    }

    pub fn node_ids(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.nodes.len()).filter(|&i| self.nodes[i].alive)
    }

    pub fn node_count(&self) -> usize {
        self.node_ids().count()
    }

    pub fn kind_counts(&self) -> BTreeMap<NodeKind, usize> {
        let mut out = BTreeMap::new();
        for x in self.node_ids() {
            *out.entry(self.nodes[x].kind).or_insert(0) += 1;
        }
        out
    }

    /// Live skeleton edges of a node.
    pub fn skeleton(&self, x: NodeId) -> Vec<SkelEdgeId> {
        self.nodes[x].edges.iter().copied().filter(|&e| self.sedges[e].alive && self.sedges[e].node == x).collect()
    }

    pub fn skeleton_vertices(&self, x: NodeId) -> Vec<VertexId> {
        let mut vs: Vec<VertexId> = self.skeleton(x).into_iter().flat_map(|e| self.sedges[e].ends).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    pub fn twin(&self, e: SkelEdgeId) -> Option<SkelEdgeId> {
        match self.sedges[e].kind {
            SkelKind::Virtual(t) => Some(t),
            SkelKind::Real(_) => None,
        }
    }

    pub fn parent(&self, x: NodeId) -> Option<NodeId> {
        self.nodes[x].parent_edge.map(|pe| self.sedges[self.twin(pe).unwrap()].node)
    }

    /// Children with the virtual edge of `x` that leads to each.
    pub fn child_edges(&self, x: NodeId) -> Vec<(SkelEdgeId, NodeId)> {
        let pe = self.nodes[x].parent_edge;
        self.skeleton(x)
            .into_iter()
            .filter(|&e| Some(e) != pe)
            .filter_map(|e| self.twin(e).map(|t| (e, self.sedges[t].node)))
            .collect()
    }

    pub fn children(&self, x: NodeId) -> Vec<NodeId> {
        self.child_edges(x).into_iter().map(|(_, c)| c).collect()
    }

    /// Live nodes in breadth-first order from the root.
    pub fn top_down(&self) -> Vec<NodeId> {
        let mut out = vec![self.root];
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            i += 1;
            out.extend(self.children(x));
        }
        out
    }

    pub fn is_embedded(&self) -> bool {
        self.emb.is_some()
    }

    pub fn embedding(&self) -> Option<&SkelEmbedding> {
        self.emb.as_ref()
    }

    /// Merges child `x` into its parent. The merged node becomes an R-node
    /// unless both were S-nodes or both were P-nodes. With an embedding, the
    /// cyclic orders are spliced at both poles.
    pub fn contract(&mut self, x: NodeId) -> NodeId {
        let px = self.nodes[x].parent_edge.expect("root cannot be contracted");
        let el = self.twin(px).unwrap();
        let l = self.sedges[el].node;
        if let Some(emb) = &mut self.emb {
            splice(emb, &self.sedges, el, px);
        }
        self.sedges[el].alive = false;
        self.sedges[px].alive = false;
        let moved: Vec<SkelEdgeId> = self.skeleton(x);
        for &e in &moved {
            self.sedges[e].node = l;
        }
        self.nodes[l].edges.extend(moved);
        self.nodes[x].alive = false;
        self.nodes[x].edges.clear();
        let (kl, kx) = (self.nodes[l].kind, self.nodes[x].kind);
        self.nodes[l].kind = match (kl, kx) {
            (NodeKind::S, NodeKind::S) => NodeKind::S,
            (NodeKind::P, NodeKind::P) => NodeKind::P,
            _ => NodeKind::R,
        };
        l
    }

    /// Splits the child edge `pick` of P-node `x` off together with the
    /// parent edge: a new node takes both plus a link edge to `x`, and becomes
    /// the parent of `x`. In an embedded tree `pick` must sit next to the
    /// parent edge at both poles. Returns the new node, labelled R.
    pub fn split_off(&mut self, x: NodeId, pick: SkelEdgeId) -> NodeId {
        let (u, v) = self.nodes[x].poles;
        let pe = self.nodes[x].parent_edge.expect("root cannot be split");
        debug_assert_eq!(self.sedges[pick].node, x);
        let y = self.new_node(NodeKind::R);
        self.nodes[y].poles = (u, v);
        self.nodes[y].parent_edge = Some(pe);
        for e in [pe, pick] {
            self.sedges[e].node = y;
            self.nodes[y].edges.push(e);
        }
        let link_y = self.new_edge(y, [u, v], SkelKind::Virtual(usize::MAX));
        let link_x = self.new_edge(x, [u, v], SkelKind::Virtual(link_y));
        self.sedges[link_y].kind = SkelKind::Virtual(link_x);
        self.nodes[x].parent_edge = Some(link_x);
        if let Some(emb) = &mut self.emb {
            for pole in [u, v] {
                let end = |e: usize| 2 * e + self.sedges[e].side_at(pole);
                let (a, b) = (end(pe), end(pick));
                // (first, second) in rotation order
                let (f, s) = if emb.next[a] == b {
                    (a, b)
                } else {
                    assert_eq!(emb.next[b], a, "split edge must neighbour the parent edge");
                    (b, a)
                };
                let (before, after) = (emb.prev[f], emb.next[s]);
                let (lx, ly) = (end(link_x), end(link_y));
                emb.next[before] = lx;
                emb.prev[lx] = before;
                emb.next[lx] = after;
                emb.prev[after] = lx;
                emb.next[f] = s;
                emb.prev[s] = f;
                emb.next[s] = ly;
                emb.prev[ly] = s;
                emb.next[ly] = f;
                emb.prev[f] = ly;
            }
        }
        y
    }

    pub fn set_kind(&mut self, x: NodeId, kind: NodeKind) {
        self.nodes[x].kind = kind;
    }

    /// Edges of `G` in the part of the tree hanging off skeleton edge `e`
    /// (the side of its twin).
    pub fn expansion_edges(&self, e: SkelEdgeId) -> Vec<EdgeId> {
        let tw = match self.sedges[e].kind {
            SkelKind::Real(x) => return vec![x],
            SkelKind::Virtual(t) => t,
        };
        let mut out = Vec::new();
        let mut stack = vec![(self.sedges[tw].node, tw)];
        while let Some((x, entry)) = stack.pop() {
            for f in self.skeleton(x) {
                if f == entry {
                    continue;
                }
                match self.sedges[f].kind {
                    SkelKind::Real(g) => out.push(g),
                    SkelKind::Virtual(t) => stack.push((self.sedges[t].node, t)),
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// The expansion graph of a virtual skeleton edge as a level graph on
    /// the touched vertices (ids shared with `g`).
    pub fn expansion_graph(&self, g: &LevelGraph, e: SkelEdgeId) -> LevelGraph {
        let es = self.expansion_edges(e);
        let mut keep: Vec<VertexId> = es.iter().flat_map(|&x| [g.edge(x).0, g.edge(x).1]).collect();
        keep.sort_unstable();
        keep.dedup();
        let mut index = vec![usize::MAX; g.n()];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let vs = keep.iter().map(|&v| g.vertex(v).clone()).collect();
        let edges = es.iter().map(|&x| (index[g.edge(x).0], index[g.edge(x).1])).collect();
        LevelGraph::new(vs, edges).expect("subgraph of a valid graph")
    }

    /// Edges of `G` below node `x` (the expansion of its parent edge).
    pub fn pertinent_edges(&self, x: NodeId) -> Vec<EdgeId> {
        match self.nodes[x].parent_edge {
            Some(pe) => self.expansion_edges(self.twin(pe).unwrap()),
            None => {
                let mut all: Vec<EdgeId> = (0..self.real.len()).collect();
                all.sort_unstable();
                all
            }
        }
    }

    /// Checks the structural invariants; returns the first violation.
    pub fn check(&self, g: &LevelGraph) -> Result<(), String> {
        let root = self.root;
        if !self.nodes[root].alive || self.nodes[root].parent_edge.is_some() {
            return Err("root must be a live node without parent edge".into());
        }
        let mut seen_real = vec![0usize; g.m()];
        let mut reached = 0;
        for x in self.top_down() {
            reached += 1;
            let node = &self.nodes[x];
            if !node.alive {
                return Err(format!("dead node {x} reachable"));
            }
            let sk = self.skeleton(x);
            if sk.len() < 2 {
                return Err(format!("node {x} has fewer than two skeleton edges"));
            }
            let mut neighbours = Vec::new();
            for &e in &sk {
                let se = &self.sedges[e];
                match se.kind {
                    SkelKind::Real(r) => {
                        if r >= g.m() {
                            return Err(format!("unknown real edge {r}"));
                        }
                        seen_real[r] += 1;
                        let (a, b) = g.edge(r);
                        if se.ends != [a, b] && se.ends != [b, a] {
                            return Err(format!("real edge {r} has wrong ends"));
                        }
                    }
                    SkelKind::Virtual(t) => {
                        let ts = &self.sedges[t];
                        if !ts.alive || ts.kind != SkelKind::Virtual(e) {
                            return Err(format!("virtual edge {e} has a broken twin"));
                        }
                        if ts.node == x {
                            return Err(format!("virtual edge {e} pairs inside node {x}"));
                        }
                        let mut p = se.ends;
                        let mut q = ts.ends;
                        p.sort_unstable();
                        q.sort_unstable();
                        if p != q {
                            return Err(format!("virtual edge {e} and its twin differ"));
                        }
                        neighbours.push(ts.node);
                    }
                }
            }
            neighbours.sort_unstable();
            if neighbours.windows(2).any(|w| w[0] == w[1]) {
                return Err(format!("node {x} has two virtual edges to one neighbour"));
            }
            if let Some(pe) = node.parent_edge {
                if self.sedges[pe].node != x {
                    return Err(format!("parent edge of {x} is not in its skeleton"));
                }
                let [a, b] = self.sedges[pe].ends;
                if self.ordered_poles(a, b) != node.poles {
                    return Err(format!("poles of {x} differ from its parent edge"));
                }
            } else if x != root {
                return Err(format!("non-root {x} without parent edge"));
            }
            self.check_kind(x, &sk)?;
            if node.kind == NodeKind::P && self.parent(x).is_some_and(|p| self.nodes[p].kind == NodeKind::P) {
                return Err(format!("P-node {x} hangs below a P-node"));
            }
        }
        if reached != self.node_count() {
            return Err("tree is not connected".into());
        }
        if let Some(e) = seen_real.iter().position(|&c| c != 1) {
            return Err(format!("edge {e} appears {} times", seen_real[e]));
        }
        if let Some(emb) = &self.emb {
            self.check_embedding(emb)?;
        }
        Ok(())
    }

    fn check_kind(&self, x: NodeId, sk: &[SkelEdgeId]) -> Result<(), String> {
        let vs = self.skeleton_vertices(x);
        let deg = |v: VertexId| sk.iter().map(|&e| self.sedges[e].ends.iter().filter(|&&y| y == v).count()).sum::<usize>();
        match self.nodes[x].kind {
            NodeKind::Q => {
                let reals = sk.iter().filter(|&&e| matches!(self.sedges[e].kind, SkelKind::Real(_))).count();
                if sk.len() != 2 || reals != 1 {
                    return Err(format!("Q-node {x} must hold one real and one virtual edge"));
                }
            }
            NodeKind::P => {
                if vs.len() != 2 || sk.len() < 3 {
                    return Err(format!("P-node {x} must be a bond with at least three edges"));
                }
            }
            NodeKind::S => {
                if sk.len() < 3 || vs.iter().any(|&v| deg(v) != 2) || vs.len() != sk.len() {
                    return Err(format!("S-node {x} is not a cycle"));
                }
            }
            NodeKind::R => {
                if sk.len() < 3 {
                    return Err(format!("R-node {x} is too small"));
                }
            }
        }
        Ok(())
    }

    fn check_embedding(&self, emb: &SkelEmbedding) -> Result<(), String> {
        for x in self.node_ids() {
            let sk = self.skeleton(x);
            let mut count: BTreeMap<VertexId, usize> = BTreeMap::new();
            for &e in &sk {
                for side in 0..2 {
                    *count.entry(self.sedges[e].ends[side]).or_insert(0) += 1;
                }
            }
            for &e in &sk {
                for side in 0..2 {
                    let z = 2 * e + side;
                    let v = self.sedges[e].ends[side];
                    if emb.prev[emb.next[z]] != z {
                        return Err(format!("broken cyclic order at end {z}"));
                    }
                    let mut k = 0;
                    let mut y = z;
                    loop {
                        let ye = y / 2;
                        if self.sedges[ye].node != x || self.sedges[ye].ends[y % 2] != v || !self.sedges[ye].alive {
                            return Err(format!("cyclic order of node {x} at vertex {v} leaves the node"));
                        }
                        k += 1;
                        y = emb.next[y];
                        if y == z || k > count[&v] {
                            break;
                        }
                    }
                    if k != count[&v] {
                        return Err(format!("cyclic order of node {x} at vertex {v} misses ends"));
                    }
                }
            }
        }
        Ok(())
    }

    /// Deterministic JSON dump: nodes with skeletons and arcs.
    pub fn dump(&self, g: &LevelGraph) -> serde_json::Value {
        self.dump_with(g, |_| None)
    }

    pub(crate) fn dump_with(
        &self,
        g: &LevelGraph,
        extra: impl Fn(NodeId) -> Option<serde_json::Value>,
    ) -> serde_json::Value {
        let mut order = self.top_down();
        order.sort_unstable();
        let mut nodes = Vec::new();
        let mut arcs = Vec::new();
        for &x in &order {
            let nd = &self.nodes[x];
            let mut edges = Vec::new();
            for e in self.skeleton(x) {
                let se = &self.sedges[e];
                let ends = [g.id(se.ends[0]), g.id(se.ends[1])];
                match se.kind {
                    SkelKind::Real(r) => edges.push(json!({"ends": ends, "real": r})),
                    SkelKind::Virtual(t) => {
                        let to = self.sedges[t].node;
                        let role = if Some(e) == nd.parent_edge { "parent" } else { "child" };
                        edges.push(json!({"ends": ends, "virtual": to, "role": role}))
                    }
                }
            }
            let mut obj = json!({
                "id": x,
                "kind": nd.kind.as_str(),
                "poles": [g.id(nd.poles.0), g.id(nd.poles.1)],
                "skeleton": edges,
            });
            if let Some(v) = extra(x) {
                obj["info"] = v;
            }
            nodes.push(obj);
            if let Some(p) = self.parent(x) {
                arcs.push(json!({"parent": p, "child": x}));
            }
        }
        json!({"root": self.root, "nodes": nodes, "arcs": arcs})
    }

    /// Order-independent description of the tree used to compare two
    /// decompositions of the same graph.
    pub fn signature(&self) -> Vec<String> {
        let sig = |x: NodeId| {
            let sk = self.skeleton(x);
            let mut reals: Vec<EdgeId> = sk
                .iter()
                .filter_map(|&e| match self.sedges[e].kind {
                    SkelKind::Real(r) => Some(r),
                    _ => None,
                })
                .collect();
            reals.sort_unstable();
            format!(
                "{}{:?}{:?}v{}",
                self.nodes[x].kind.as_str(),
                self.skeleton_vertices(x),
                reals,
                sk.len() - reals.len()
            )
        };
        let mut out: Vec<String> = self.node_ids().map(|x| format!("node {}", sig(x))).collect();
        for x in self.node_ids() {
            if let Some(p) = self.parent(x) {
                let (a, b) = (sig(p), sig(x));
                out.push(format!("arc {} -> {}", a, b));
            }
        }
        out.sort();
        out
    }
}

/// Cyclic orders (as edge ends) of some planar embedding of a skeleton, one
/// list per skeleton vertex. Two-vertex skeletons get their listed order.
pub(crate) fn planar_skeleton(t: &DecompositionTree, sk: &[SkelEdgeId]) -> Option<Vec<Vec<usize>>> {
    let mut verts: Vec<VertexId> = sk.iter().flat_map(|&e| t.sedges[e].ends).collect();
    verts.sort_unstable();
    verts.dedup();
    let end = |e: SkelEdgeId, v: VertexId| 2 * e + t.sedges[e].side_at(v);
    if verts.len() == 2 {
        let a: Vec<usize> = sk.iter().map(|&e| end(e, verts[0])).collect();
        let b: Vec<usize> = sk.iter().rev().map(|&e| end(e, verts[1])).collect();
        return Some(vec![a, b]);
    }
    let local = |v: VertexId| verts.binary_search(&v).unwrap();
    let edges: Vec<(usize, usize)> = sk.iter().map(|&e| (local(t.sedges[e].ends[0]), local(t.sedges[e].ends[1]))).collect();
    let rot = crate::embedding::planar::planar_rotation(verts.len(), &edges)?;
    Some(
        rot.into_iter()
            .enumerate()
            .map(|(i, r)| r.into_iter().map(|k| end(sk[k], verts[i])).collect())
            .collect(),
    )
}

/// Joins the cyclic orders of `a` (in the parent) and its twin `b` at both
/// ends, dropping the two ends themselves.
pub(crate) fn splice(emb: &mut SkelEmbedding, sedges: &[SkelEdge], a: SkelEdgeId, b: SkelEdgeId) {
    for side in 0..2 {
        let x = sedges[a].ends[side];
        let ea = 2 * a + side;
        let eb = 2 * b + sedges[b].side_at(x);
        let (pa, na) = (emb.prev[ea], emb.next[ea]);
        let (pb, nb) = (emb.prev[eb], emb.next[eb]);
        match (pa == ea, pb == eb) {
            (true, true) => continue,
            (true, false) => {
                emb.next[pb] = nb;
                emb.prev[nb] = pb;
                continue;
            }
            (false, true) => {
                emb.next[pa] = na;
                emb.prev[na] = pa;
                continue;
            }
            (false, false) => {}
        }
        // parent: ... pa, [a], na ...   child: ... pb, [b], nb ...
        // result: pa, nb, ..., pb, na
        emb.next[pa] = nb;
        emb.prev[nb] = pa;
        emb.next[pb] = na;
        emb.prev[na] = pb;
    }
}
