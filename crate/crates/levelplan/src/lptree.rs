//! LP-trees: decomposition trees whose choices are exactly the level-planar
//! embeddings of a biconnected single-source level graph with unique apex
//! `t` and an edge `(s, t)`.
//!
//! Construction starts from the SPQR-tree with skeletons embedded by one
//! level-planar embedding Γ, then
//! 1. splits P-nodes until every child lies strictly below the upper pole,
//! 2. contracts every arc from an R-node to an S-node,
//! 3. labels each arc rigid when the height of the child reaches the space
//!    around it in Γ, and contracts the rigid arcs.

use num_bigint::BigUint;
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use crate::decomposition::{
    ChoiceSpace, ChoiceVector, DecompositionError, DecompositionTree, NodeId, NodeKind, SkelKind,
};
use crate::embedding::{is_level_planar_embedding, EmbeddingError, RotationSystem};
use crate::levelgraph::{validate, LevelGraph};

/// Upper bound on candidate embeddings tried by [`reference_embedding`].
pub const SEARCH_LIMIT: u64 = 1 << 22;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LpError {
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("graph is not level planar")]
    NotLevelPlanar,
    #[error("reference embedding search exceeded {0} candidates")]
    SearchLimit(u64),
    #[error("embedding is not level planar")]
    EmbeddingNotLevelPlanar,
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
    #[error(transparent)]
    Decomposition(#[from] DecompositionError),
    #[error("malformed choice vector: {0}")]
    MalformedChoice(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ArcLabel {
    Unlabeled,
    Rigid,
    Flexible,
}

/// What each construction phase did.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BuildStats {
    pub p_splits: usize,
    pub p_relabels: usize,
    pub rs_contractions: usize,
    pub rigid_contractions: usize,
}

#[derive(Clone, Debug)]
pub struct LpTree {
    tree: DecompositionTree,
    graph: LevelGraph,
    reference: RotationSystem,
    /// Per node id, as computed before the rigid contractions.
    heights: Vec<u32>,
    spaces: Vec<u32>,
    labels: Vec<ArcLabel>,
    stats: BuildStats,
}

fn check_ready(g: &LevelGraph) -> Result<(), LpError> {
    let d = validate(g);
    if d.lp_ready() {
        return Ok(());
    }
    let mut failed = Vec::new();
    for (ok, name) in [
        (d.single_source, "single-source"),
        (d.biconnected, "biconnected"),
        (d.unique_apex, "unique-apex"),
        (d.has_st_edge, "has-(s,t)-edge"),
        (d.simple, "simple"),
        (d.demands_bounded, "demands-bounded"),
    ] {
        if !ok {
            failed.push(name);
        }
    }
    Err(LpError::Precondition(failed.join(", ")))
}

/// Builds the LP-tree of `g`, finding a reference embedding first.
pub fn build_lp_tree(g: &LevelGraph) -> Result<LpTree, LpError> {
    let gamma = reference_embedding(g)?;
    build_lp_tree_with_embedding(g, &gamma)
}

/// Builds the LP-tree of `g` from a known level-planar embedding.
pub fn build_lp_tree_with_embedding(g: &LevelGraph, gamma: &RotationSystem) -> Result<LpTree, LpError> {
    check_ready(g)?;
    gamma.check(g)?;
    if !is_level_planar_embedding(g, gamma)? {
        return Err(LpError::EmbeddingNotLevelPlanar);
    }
    let mut tree = DecompositionTree::build(g)?;
    tree.embed_from(g, gamma);
    let mut stats = BuildStats::default();
    let mut heights = compute_heights(&tree, g);
    split_pass(&mut tree, g, &mut heights, &mut stats)?;
    stats.rs_contractions = contract_r_s(&mut tree);
    let heights = compute_heights(&tree, g);
    let spaces = compute_spaces(&tree, g);
    let labels = label_arcs(&tree, &heights, &spaces)?;
    for x in tree.top_down() {
        if labels[x] == ArcLabel::Rigid {
            tree.contract(x);
            stats.rigid_contractions += 1;
        }
    }
    Ok(LpTree { tree, graph: g.clone(), reference: gamma.clone(), heights, spaces, labels, stats })
}

/// Height of every live node: the largest demand of a vertex strictly inside
/// its expansion graph. A Q-node gets the level of its lower endpoint.
pub fn compute_heights(t: &DecompositionTree, g: &LevelGraph) -> Vec<u32> {
    let order = t.top_down();
    let mut h = vec![0u32; t.nodes.len()];
    for &x in order.iter().rev() {
        let (u, v) = t.node(x).poles;
        if t.kind(x) == NodeKind::Q {
            h[x] = g.level(u);
            continue;
        }
        let mut best = 0;
        for w in t.skeleton_vertices(x) {
            if x == t.root() || (w != u && w != v) {
                best = best.max(g.demand(w));
            }
        }
        for c in t.children(x) {
            if t.kind(c) != NodeKind::Q {
                best = best.max(h[c]);
            }
        }
        h[x] = if best == 0 { g.level(u) } else { best };
    }
    h
}

/// Splits P-nodes until no child reaches the upper pole's level. A P-node
/// with a tall child among exactly two children becomes an R-node instead.
pub fn split_pass(
    t: &mut DecompositionTree,
    g: &LevelGraph,
    heights: &mut Vec<u32>,
    stats: &mut BuildStats,
) -> Result<(), LpError> {
    let mut work: Vec<NodeId> = t.top_down().into_iter().filter(|&x| t.kind(x) == NodeKind::P).collect();
    while let Some(x) = work.pop() {
        let top = g.level(t.node(x).poles.1);
        let kids = t.p_reference_order(x);
        let child = |e: usize| t.sedge(t.twin(e).unwrap()).node;
        let hs: Vec<u32> = kids.iter().map(|&e| heights[child(e)]).collect();
        let max = *hs.iter().max().unwrap();
        if max < top {
            continue;
        }
        let last = kids.len() - 1;
        let pick = if hs[0] == max {
            0
        } else if hs[last] == max {
            last
        } else {
            return Err(LpError::Invariant(format!("tallest child of P-node {x} is not outermost")));
        };
        if kids.len() == 2 {
            t.set_kind(x, NodeKind::R);
            stats.p_relabels += 1;
            continue;
        }
        let rest_height = kids
            .iter()
            .enumerate()
            .filter(|&(i, &e)| i != pick && t.kind(child(e)) != NodeKind::Q)
            .map(|(_, &e)| heights[child(e)])
            .max();
        let y = t.split_off(x, kids[pick]);
        heights.resize(t.nodes.len(), 0);
        heights[y] = heights[x];
        heights[x] = rest_height.unwrap_or_else(|| g.level(t.node(x).poles.0));
        stats.p_splits += 1;
        work.push(x);
    }
    Ok(())
}

/// Contracts every arc from an R-node into an S-node child.
pub fn contract_r_s(t: &mut DecompositionTree) -> usize {
    let mut count = 0;
    for x in t.top_down() {
        if !t.is_alive(x) || t.kind(x) != NodeKind::S {
            continue;
        }
        if let Some(p) = t.parent(x) {
            if t.kind(p) == NodeKind::R {
                t.contract(x);
                count += 1;
            }
        }
    }
    count
}

/// Space around every non-root node: the smaller apex level of the two faces
/// next to its parent virtual edge, in the embedding where the node's
/// expansion graph is replaced by that single edge. Needs skeleton embeddings.
pub fn compute_spaces(t: &DecompositionTree, g: &LevelGraph) -> Vec<u32> {
    let emb = t.embedding().expect("tree must be embedded");
    let nd = 2 * t.sedges.len();
    let level = |v: usize| g.level(v);
    // faces of every skeleton: face id per dart, darts per face
    let mut face_of = vec![usize::MAX; nd];
    let mut faces: Vec<Vec<usize>> = Vec::new();
    let order = t.top_down();
    for &x in &order {
        for e in t.skeleton(x) {
            for d0 in [2 * e, 2 * e + 1] {
                if face_of[d0] != usize::MAX {
                    continue;
                }
                let id = faces.len();
                let mut darts = Vec::new();
                let mut d = d0;
                loop {
                    face_of[d] = id;
                    darts.push(d);
                    d = emb.prev[d ^ 1];
                    if d == d0 {
                        break;
                    }
                }
                faces.push(darts);
            }
        }
    }
    let tail = |d: usize| t.sedge(d / 2).ends[d % 2];
    // reversed dart of the parent edge of the child behind virtual dart `d`
    let child_dart = |d: usize| -> Option<usize> {
        let e = d / 2;
        let SkelKind::Virtual(tw) = t.sedge(e).kind else { return None };
        let x = tail(d);
        // dart of the twin going the other way (head to tail of d)
        Some(2 * tw + usize::from(t.sedge(tw).ends[0] == x))
    };
    // bnd[d]: for the parent edge of a node, largest level strictly inside the
    // expansion graph on the boundary facing the face left of dart d
    let mut bnd = vec![0u32; nd];
    for &x in order.iter().rev() {
        let Some(pe) = t.node(x).parent_edge else { continue };
        let (u, v) = t.node(x).poles;
        for d0 in [2 * pe, 2 * pe + 1] {
            let mut best = 0;
            for &d in &faces[face_of[d0]] {
                if d / 2 == pe {
                    continue;
                }
                let w = tail(d);
                if w != u && w != v {
                    best = best.max(level(w));
                }
                if let Some(cd) = child_dart(d) {
                    best = best.max(bnd[cd]);
                }
            }
            bnd[d0] = best;
        }
    }
    // out[d]: for a child virtual dart d, largest level on the face left of d
    // outside the child's expansion graph
    let mut out = vec![0u32; nd];
    let mut spaces = vec![0u32; t.nodes.len()];
    for &x in &order {
        let pe = t.node(x).parent_edge;
        let mut done = std::collections::HashSet::new();
        for e in t.skeleton(x) {
            for d0 in [2 * e, 2 * e + 1] {
                let f = face_of[d0];
                if !done.insert(f) {
                    continue;
                }
                let mut vmax = 0;
                // best two contributions of edges, with their edge ids
                let mut top: [(u32, usize); 2] = [(0, usize::MAX); 2];
                let push = |val: u32, edge: usize, top: &mut [(u32, usize); 2]| {
                    if val > top[0].0 {
                        top[1] = top[0];
                        top[0] = (val, edge);
                    } else if val > top[1].0 {
                        top[1] = (val, edge);
                    }
                };
                for &d in &faces[f] {
                    vmax = vmax.max(level(tail(d)));
                    let e = d / 2;
                    if Some(e) == pe {
                        let tw = t.twin(e).unwrap();
                        let x0 = tail(d);
                        let pd = 2 * tw + usize::from(t.sedge(tw).ends[0] == x0);
                        push(out[pd], e, &mut top);
                    } else if let Some(cd) = child_dart(d) {
                        push(bnd[cd], e, &mut top);
                    }
                }
                for &d in &faces[f] {
                    let e = d / 2;
                    if Some(e) == pe || child_dart(d).is_none() {
                        continue;
                    }
                    let other = if top[0].1 != e { top[0].0 } else { top[1].0 };
                    out[d] = vmax.max(other);
                }
            }
        }
        for (e, c) in t.child_edges(x) {
            spaces[c] = out[2 * e].min(out[2 * e + 1]);
        }
    }
    spaces
}

/// Labels the arc into every non-root node: rigid iff height ≥ space.
pub fn label_arcs(t: &DecompositionTree, heights: &[u32], spaces: &[u32]) -> Result<Vec<ArcLabel>, LpError> {
    let mut labels = vec![ArcLabel::Unlabeled; t.nodes.len()];
    for x in t.top_down() {
        let Some(p) = t.parent(x) else { continue };
        let rigid = heights[x] >= spaces[x];
        if rigid && (t.kind(x) == NodeKind::P || t.kind(p) == NodeKind::P) {
            return Err(LpError::Invariant(format!("rigid arc at P-node ({p}, {x})")));
        }
        labels[x] = if rigid { ArcLabel::Rigid } else { ArcLabel::Flexible };
    }
    Ok(labels)
}

/// Some level-planar embedding of `g`, found by trying SPQR embedding choices
/// (tall P-children peeled onto the ends by decreasing height, short ones
/// in a fixed order).
pub fn reference_embedding(g: &LevelGraph) -> Result<RotationSystem, LpError> {
    check_ready(g)?;
    let mut tree = DecompositionTree::build(g)?;
    if !tree.embed_planar() {
        return Err(LpError::NotLevelPlanar);
    }
    let heights = compute_heights(&tree, g);
    let space = ChoiceSpace::of(&tree);
    // candidate orders per P-node
    let mut options: Vec<(NodeId, Vec<Vec<usize>>)> = Vec::new();
    let mut total: u64 = 1 << space.r_nodes.len().min(63);
    for &(x, k) in &space.p_nodes {
        let top = g.level(tree.node(x).poles.1);
        let kids = tree.p_reference_order(x);
        let h = |i: usize| heights[tree.sedge(tree.twin(kids[i]).unwrap()).node];
        let mut tall: Vec<usize> = (0..k).filter(|&i| h(i) >= top).collect();
        tall.sort_by_key(|&i| std::cmp::Reverse(h(i)));
        let short: Vec<usize> = (0..k).filter(|i| !tall.contains(i)).collect();
        if tall.len() > 20 {
            return Err(LpError::SearchLimit(SEARCH_LIMIT));
        }
        // peel tall children by decreasing height, each onto either end
        let mut opts = Vec::new();
        for mask in 0..1u32 << tall.len() {
            let (mut left, mut right) = (Vec::new(), Vec::new());
            for (j, &i) in tall.iter().enumerate() {
                if mask >> j & 1 == 0 { left.push(i) } else { right.push(i) }
            }
            right.reverse();
            opts.push([left, short.clone(), right].concat());
        }
        total = total.saturating_mul(opts.len() as u64);
        options.push((x, opts));
    }
    if total > SEARCH_LIMIT {
        return Err(LpError::SearchLimit(SEARCH_LIMIT));
    }
    let mut idx = vec![0usize; options.len()];
    let mut choice = space.identity();
    loop {
        for (i, (x, opts)) in options.iter().enumerate() {
            choice.orders.insert(*x, opts[idx[i]].clone());
        }
        for flips in 0..(1u64 << space.r_nodes.len()) {
            for (j, &r) in space.r_nodes.iter().enumerate() {
                choice.flips.insert(r, flips >> j & 1 == 1);
            }
            let rot = tree.realize(g, &choice);
            if is_level_planar_embedding(g, &rot)? {
                return Ok(rot);
            }
        }
        let mut k = 0;
        while k < idx.len() {
            idx[k] += 1;
            if idx[k] < options[k].1.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == idx.len() {
            return Err(LpError::NotLevelPlanar);
        }
    }
}

impl LpTree {
    pub fn tree(&self) -> &DecompositionTree {
        &self.tree
    }

    pub fn graph(&self) -> &LevelGraph {
        &self.graph
    }

    pub fn reference(&self) -> &RotationSystem {
        &self.reference
    }

    pub fn stats(&self) -> &BuildStats {
        &self.stats
    }

    pub fn height(&self, x: NodeId) -> u32 {
        self.heights[x]
    }

    pub fn space(&self, x: NodeId) -> u32 {
        self.spaces[x]
    }

    /// Label given to the arc into `x` before the rigid arcs were contracted.
    pub fn label(&self, x: NodeId) -> ArcLabel {
        self.labels[x]
    }

    pub fn choice_space(&self) -> ChoiceSpace {
        ChoiceSpace::of(&self.tree)
    }

    /// Number of represented embeddings: the product of the factorials of
    /// the P-node child counts, times two for every arc into an R-node.
    pub fn count(&self) -> BigUint {
        self.choice_space().count()
    }

    pub fn realize(&self, c: &ChoiceVector) -> Result<RotationSystem, LpError> {
        let space = self.choice_space();
        for &(x, k) in &space.p_nodes {
            let Some(p) = c.orders.get(&x) else {
                return Err(LpError::MalformedChoice(format!("missing order for P-node {x}")));
            };
            let mut q = p.clone();
            q.sort_unstable();
            if q != (0..k).collect::<Vec<_>>() {
                return Err(LpError::MalformedChoice(format!("order for P-node {x} is not a permutation of 0..{k}")));
            }
        }
        if let Some(x) = c.orders.keys().find(|x| !space.p_nodes.iter().any(|(y, _)| y == *x)) {
            return Err(LpError::MalformedChoice(format!("node {x} is not a P-node")));
        }
        if let Some(x) = c.flips.keys().find(|x| !space.r_nodes.contains(x)) {
            return Err(LpError::MalformedChoice(format!("node {x} is not a flippable R-node")));
        }
        Ok(self.tree.realize(&self.graph, c))
    }

    /// Every represented embedding, one per choice vector.
    pub fn enumerate(&self) -> impl Iterator<Item = RotationSystem> + '_ {
        self.choice_space().iter().map(move |c| self.tree.realize(&self.graph, &c))
    }

    /// Every represented embedding with the choice vector producing it.
    pub fn enumerate_choices(&self) -> impl Iterator<Item = (ChoiceVector, RotationSystem)> + '_ {
        self.choice_space().iter().map(move |c| {
            let r = self.tree.realize(&self.graph, &c);
            (c, r)
        })
    }

    /// Deterministic JSON description: nodes, arcs, P-node child lists, counts.
    pub fn dump(&self) -> serde_json::Value {
        let t = &self.tree;
        let g = &self.graph;
        let mut v = t.dump_with(g, |x| {
            let mut info = json!({"height": self.heights[x]});
            if t.parent(x).is_some() {
                info["space"] = json!(self.spaces[x]);
                info["label"] = json!("flexible");
            }
            if t.kind(x) == NodeKind::P {
                let kids: Vec<NodeId> = t.p_reference_order(x).into_iter().map(|e| t.sedge(t.twin(e).unwrap()).node).collect();
                info["children"] = json!(kids);
            }
            Some(info)
        });
        v["count"] = json!(self.count().to_string());
        v["stats"] = serde_json::to_value(&self.stats).unwrap();
        v
    }
}
