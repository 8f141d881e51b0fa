//! Skeleton embeddings: deriving them from an embedding of `G`, choosing
//! arbitrary planar ones, and realizing a choice of child orders and flips as
//! an embedding of `G`.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::{planar_skeleton, splice, DecompositionTree, NodeId, NodeKind, SkelEdgeId, SkelEmbedding, SkelKind};
use crate::embedding::RotationSystem;
use crate::levelgraph::{EdgeId, LevelGraph, VertexId};

const NONE: usize = usize::MAX;

/// One point of the choice space of a tree: an order of the children of each
/// P-node (a permutation of its reference order) and a flip bit per R-node.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChoiceVector {
    pub orders: BTreeMap<NodeId, Vec<usize>>,
    pub flips: BTreeMap<NodeId, bool>,
}

/// The free choices of a tree.
#[derive(Clone, Debug)]
pub struct ChoiceSpace {
    /// P-nodes with their number of children.
    pub p_nodes: Vec<(NodeId, usize)>,
    /// Non-root R-nodes.
    pub r_nodes: Vec<NodeId>,
}

impl ChoiceSpace {
    pub fn of(tree: &DecompositionTree) -> Self {
        let mut p_nodes = Vec::new();
        let mut r_nodes = Vec::new();
        for x in tree.top_down() {
            match tree.kind(x) {
                NodeKind::P => p_nodes.push((x, tree.p_reference_order(x).len())),
                NodeKind::R if x != tree.root() => r_nodes.push(x),
                _ => {}
            }
        }
        ChoiceSpace { p_nodes, r_nodes }
    }

    /// Product of the factorials of the P-node degrees times two per R-node.
    pub fn count(&self) -> BigUint {
        let mut c = BigUint::from(1u32) << self.r_nodes.len();
        for &(_, k) in &self.p_nodes {
            for i in 2..=k {
                c *= BigUint::from(i);
            }
        }
        c
    }

    /// The identity choice: reference orders, no flips.
    pub fn identity(&self) -> ChoiceVector {
        ChoiceVector {
            orders: self.p_nodes.iter().map(|&(x, k)| (x, (0..k).collect())).collect(),
            flips: self.r_nodes.iter().map(|&x| (x, false)).collect(),
        }
    }

    /// Every choice vector, in odometer order starting from the identity.
    pub fn iter(&self) -> ChoiceIter {
        ChoiceIter { space: self.clone(), cur: Some(self.identity()) }
    }
}

pub struct ChoiceIter {
    space: ChoiceSpace,
    cur: Option<ChoiceVector>,
}

impl Iterator for ChoiceIter {
    type Item = ChoiceVector;

    fn next(&mut self) -> Option<ChoiceVector> {
        let out = self.cur.clone()?;
        let mut c = out.clone();
        let mut carried = true;
        for &x in &self.space.r_nodes {
            let f = c.flips.get_mut(&x).unwrap();
            *f = !*f;
            if *f {
                carried = false;
                break;
            }
        }
        if carried {
            for &(x, _) in &self.space.p_nodes {
                let p = c.orders.get_mut(&x).unwrap();
                if next_permutation(p) {
                    carried = false;
                    break;
                }
            }
        }
        self.cur = if carried { None } else { Some(c) };
        Some(out)
    }
}

/// Advances to the next permutation in lexicographic order; on the last one,
/// resets to the first and returns false.
pub(crate) fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        p.reverse();
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

impl DecompositionTree {
    fn pole_index(&self, x: NodeId, v: VertexId) -> usize {
        usize::from(self.nodes[x].poles.0 != v)
    }

    /// Sets every skeleton embedding to the one induced by `rot`, an embedding
    /// of the graph the tree was built from.
    pub fn embed_from(&mut self, g: &LevelGraph, rot: &RotationSystem) {
        let pos = rot.positions(g);
        let order = self.top_down();
        let n_nodes = self.nodes.len();
        // representative edge of G below node x at each pole
        let mut down = vec![[NONE; 2]; n_nodes];
        // representative edge of G outside node x at each pole
        let mut up = vec![[NONE; 2]; n_nodes];
        for &x in order.iter().rev() {
            let Some(pe) = self.nodes[x].parent_edge else { continue };
            let (u, v) = self.nodes[x].poles;
            for (i, p) in [u, v].into_iter().enumerate() {
                for e in self.skeleton(x) {
                    if e == pe || !self.sedges[e].ends.contains(&p) {
                        continue;
                    }
                    down[x][i] = match self.sedges[e].kind {
                        SkelKind::Real(r) => r,
                        SkelKind::Virtual(t) => {
                            let c = self.sedges[t].node;
                            down[c][self.pole_index(c, p)]
                        }
                    };
                    break;
                }
            }
        }
        let mut cand: Vec<[SkelEdgeId; 2]> = vec![[NONE; 2]; self.levels.len()];
        for &x in &order {
            let sk = self.skeleton(x);
            let rep = |e: SkelEdgeId, p: VertexId, up: &[[usize; 2]]| -> EdgeId {
                match self.sedges[e].kind {
                    SkelKind::Real(r) => r,
                    SkelKind::Virtual(_) if Some(e) == self.nodes[x].parent_edge => up[x][self.pole_index(x, p)],
                    SkelKind::Virtual(t) => {
                        let c = self.sedges[t].node;
                        down[c][self.pole_index(c, p)]
                    }
                }
            };
            for &e in &sk {
                for p in self.sedges[e].ends {
                    let c = &mut cand[p];
                    if c[0] == NONE {
                        c[0] = e;
                    } else if c[1] == NONE {
                        c[1] = e;
                    }
                }
            }
            for &e in &sk {
                let SkelKind::Virtual(t) = self.sedges[e].kind else { continue };
                if Some(e) == self.nodes[x].parent_edge {
                    continue;
                }
                let c = self.sedges[t].node;
                for p in self.sedges[e].ends {
                    let other = if cand[p][0] != e { cand[p][0] } else { cand[p][1] };
                    let r = rep(other, p, &up);
                    up[c][self.pole_index(c, p)] = r;
                }
            }
            for &e in &sk {
                for p in self.sedges[e].ends {
                    cand[p] = [NONE; 2];
                }
            }
        }
        let mut emb = SkelEmbedding {
            next: (0..2 * self.sedges.len()).collect(),
            prev: (0..2 * self.sedges.len()).collect(),
        };
        let mut bucket: Vec<Vec<(u32, usize)>> = vec![Vec::new(); self.levels.len()];
        for &x in &order {
            let sk = self.skeleton(x);
            let mut touched = Vec::new();
            for &e in &sk {
                for side in 0..2 {
                    let p = self.sedges[e].ends[side];
                    let r = match self.sedges[e].kind {
                        SkelKind::Real(r) => r,
                        SkelKind::Virtual(_) if Some(e) == self.nodes[x].parent_edge => up[x][self.pole_index(x, p)],
                        SkelKind::Virtual(t) => {
                            let c = self.sedges[t].node;
                            down[c][self.pole_index(c, p)]
                        }
                    };
                    let at = pos[r][usize::from(g.edge(r).0 != p)];
                    if bucket[p].is_empty() {
                        touched.push(p);
                    }
                    bucket[p].push((at, 2 * e + side));
                }
            }
            for p in touched {
                let mut b = std::mem::take(&mut bucket[p]);
                b.sort_unstable();
                link_cycle(&mut emb, b.iter().map(|&(_, z)| z));
            }
        }
        self.emb = Some(emb);
    }

    /// Gives every skeleton some planar embedding: reference orders at
    /// P-nodes, a planar embedding at R-nodes. Returns false (leaving the
    /// tree unembedded) if some skeleton is not planar.
    pub fn embed_planar(&mut self) -> bool {
        let mut emb = SkelEmbedding {
            next: (0..2 * self.sedges.len()).collect(),
            prev: (0..2 * self.sedges.len()).collect(),
        };
        for x in self.top_down() {
            let sk = self.skeleton(x);
            match self.kind(x) {
                NodeKind::P => {
                    let (u, v) = self.nodes[x].poles;
                    let mut order = sk.clone();
                    if let Some(pe) = self.nodes[x].parent_edge {
                        let i = order.iter().position(|&e| e == pe).unwrap();
                        order.rotate_left(i);
                    }
                    link_cycle(&mut emb, order.iter().map(|&e| 2 * e + self.sedges[e].side_at(u)));
                    let rest = order[1..].iter().rev();
                    let at_v = std::iter::once(order[0]).chain(rest.copied());
                    link_cycle(&mut emb, at_v.map(|e| 2 * e + self.sedges[e].side_at(v)));
                }
                _ => {
                    let Some(rot) = planar_skeleton(self, &sk) else { return false };
                    for ends in rot {
                        link_cycle(&mut emb, ends.into_iter());
                    }
                }
            }
        }
        self.emb = Some(emb);
        true
    }

    /// Children of P-node `x` (as skeleton edges) in counter-clockwise order at
    /// its first pole, starting after the parent edge.
    pub fn p_reference_order(&self, x: NodeId) -> Vec<SkelEdgeId> {
        let sk = self.skeleton(x);
        let pe = self.nodes[x].parent_edge;
        let Some(emb) = &self.emb else {
            return sk.into_iter().filter(|&e| Some(e) != pe).collect();
        };
        let u = self.nodes[x].poles.0;
        let start = pe.unwrap_or(sk[0]);
        let z0 = 2 * start + self.sedges[start].side_at(u);
        let mut out = Vec::new();
        let mut z = emb.next[z0];
        while z != z0 {
            out.push(z / 2);
            z = emb.next[z];
        }
        if pe.is_none() {
            out.insert(0, start);
        }
        out
    }

    /// The embedding of `G` obtained by applying `choice` to the skeleton
    /// embeddings and contracting every arc.
    pub fn realize(&self, g: &LevelGraph, choice: &ChoiceVector) -> RotationSystem {
        let mut emb = self.emb.clone().expect("tree has no embedding");
        for (&x, perm) in &choice.orders {
            let refo = self.p_reference_order(x);
            assert_eq!(refo.len(), perm.len(), "order length for P-node {x}");
            let mut order: Vec<SkelEdgeId> = Vec::with_capacity(refo.len() + 1);
            let pe = self.nodes[x].parent_edge;
            order.extend(pe);
            order.extend(perm.iter().map(|&i| refo[i]));
            let (u, v) = self.nodes[x].poles;
            link_cycle(&mut emb, order.iter().map(|&e| 2 * e + self.sedges[e].side_at(u)));
            let at_v: Vec<SkelEdgeId> = match pe {
                Some(p) => std::iter::once(p).chain(order[1..].iter().rev().copied()).collect(),
                None => order.iter().rev().copied().collect(),
            };
            link_cycle(&mut emb, at_v.iter().map(|&e| 2 * e + self.sedges[e].side_at(v)));
        }
        let order = self.top_down();
        let mut parity = vec![false; self.nodes.len()];
        for &x in &order {
            let inherited = self.parent(x).map_or(false, |p| parity[p]);
            parity[x] = inherited ^ choice.flips.get(&x).copied().unwrap_or(false);
            if parity[x] {
                for e in self.skeleton(x) {
                    for side in 0..2 {
                        let z = 2 * e + side;
                        let (a, b) = (emb.next[z], emb.prev[z]);
                        emb.next[z] = b;
                        emb.prev[z] = a;
                    }
                }
            }
        }
        for &x in &order {
            if let Some(pe) = self.nodes[x].parent_edge {
                splice(&mut emb, &self.sedges, self.twin(pe).unwrap(), pe);
            }
        }
        let mut rot = vec![Vec::new(); g.n()];
        for v in 0..g.n() {
            let Some(&e0) = g.incident(v).first() else { continue };
            let se = self.real[e0];
            let z0 = 2 * se + self.sedges[se].side_at(v);
            let mut z = z0;
            loop {
                match self.sedges[z / 2].kind {
                    SkelKind::Real(r) => rot[v].push(r),
                    SkelKind::Virtual(_) => unreachable!("virtual end left after contraction"),
                }
                z = emb.next[z];
                if z == z0 {
                    break;
                }
            }
        }
        RotationSystem::from_lists(rot)
    }

    /// Realizes every point of the choice space.
    pub fn all_embeddings(&self, g: &LevelGraph) -> impl Iterator<Item = RotationSystem> + '_ {
        let g = g.clone();
        ChoiceSpace::of(self).iter().map(move |c| self.realize(&g, &c))
    }
}

fn link_cycle(emb: &mut SkelEmbedding, ends: impl Iterator<Item = usize>) {
    let v: Vec<usize> = ends.collect();
    let k = v.len();
    for i in 0..k {
        emb.next[v[i]] = v[(i + 1) % k];
        emb.prev[v[(i + 1) % k]] = v[i];
    }
}
