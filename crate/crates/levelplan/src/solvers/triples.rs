//! Locating triple constraints in an LP-tree and choosing node orientations
//! and P-node orders that satisfy them.

use std::collections::BTreeMap;

use super::{ConstraintTriple, Outcome, SolverError};
use crate::decomposition::{ChoiceVector, DecompositionTree, NodeId, NodeKind, SkelEdgeId};
use crate::levelgraph::VertexId;
use crate::lptree::{LpError, LpTree};

/// Backtracking steps allowed per P-node.
pub const ORDER_BUDGET: u64 = 1 << 22;

/// Where a triple takes effect.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Placement {
    /// The triple holds iff R-node `node` has absolute parity
    /// `!reference_ccw`, that is, iff it is reflected exactly when the
    /// reference skeleton embedding has the triple clockwise.
    Rigid { node: NodeId, reference_ccw: bool },
    /// Labels of P-node `node`'s sequence (0 = parent edge, `i + 1` = child
    /// `i` of the reference order) that must be counter-clockwise around the
    /// first pole, before the node's parity is applied.
    Parallel { node: NodeId, labels: [usize; 3] },
}

impl Placement {
    pub fn node(&self) -> NodeId {
        match *self {
            Placement::Rigid { node, .. } | Placement::Parallel { node, .. } => node,
        }
    }
}

/// True if positions `p[0]`, `p[1]`, `p[2]` occur in this cyclic order.
pub(crate) fn cyclic(p: [usize; 3]) -> bool {
    let [a, b, c] = p;
    (a < b && b < c) || (b < c && c < a) || (c < a && a < b)
}

/// Least-common-ancestor queries and triple placement over one tree.
pub struct TripleLocator<'a> {
    tree: &'a DecompositionTree,
    depth: Vec<usize>,
    up: Vec<Vec<NodeId>>,
    /// Label of every skeleton edge of a P-node in its node's sequence.
    p_label: Vec<usize>,
}

impl<'a> TripleLocator<'a> {
    pub fn new(tree: &'a DecompositionTree) -> Self {
        let n = tree.nodes.len();
        let order = tree.top_down();
        let mut depth = vec![0; n];
        let mut parent = vec![tree.root(); n];
        for &x in &order {
            if let Some(p) = tree.parent(x) {
                depth[x] = depth[p] + 1;
                parent[x] = p;
            }
        }
        let mut up = vec![parent];
        let max_depth = depth.iter().copied().max().unwrap_or(0);
        while 1 << up.len() <= max_depth {
            let prev = up.last().unwrap();
            let next = (0..n).map(|x| prev[prev[x]]).collect();
            up.push(next);
        }
        let mut p_label = vec![usize::MAX; tree.sedges.len()];
        for &x in &order {
            if tree.kind(x) == NodeKind::P {
                if let Some(pe) = tree.node(x).parent_edge {
                    p_label[pe] = 0;
                }
                for (i, e) in tree.p_reference_order(x).into_iter().enumerate() {
                    p_label[e] = i + 1;
                }
            }
        }
        TripleLocator { tree, depth, up, p_label }
    }

    pub fn tree(&self) -> &DecompositionTree {
        self.tree
    }

    fn ancestor_at(&self, mut x: NodeId, d: usize) -> NodeId {
        let mut diff = self.depth[x] - d;
        let mut j = 0;
        while diff > 0 {
            if diff & 1 == 1 {
                x = self.up[j][x];
            }
            diff >>= 1;
            j += 1;
        }
        x
    }

    pub fn lca(&self, a: NodeId, b: NodeId) -> NodeId {
        let d = self.depth[a].min(self.depth[b]);
        let (mut a, mut b) = (self.ancestor_at(a, d), self.ancestor_at(b, d));
        if a == b {
            return a;
        }
        for j in (0..self.up.len()).rev() {
            if self.up[j][a] != self.up[j][b] {
                a = self.up[j][a];
                b = self.up[j][b];
            }
        }
        self.up[0][a]
    }

    /// The node holding the triple's three edges on distinct skeleton edges,
    /// with those skeleton edges.
    pub fn locate(&self, c: &ConstraintTriple) -> Result<(NodeId, [SkelEdgeId; 3]), LpError> {
        let t = self.tree;
        let real = c.edges.map(|e| t.real_sedge(e));
        let leaf = real.map(|z| t.sedge(z).node);
        let cands = [self.lca(leaf[0], leaf[1]), self.lca(leaf[0], leaf[2]), self.lca(leaf[1], leaf[2])];
        let m = *cands.iter().max_by_key(|&&x| self.depth[x]).unwrap();
        let mut out = [0; 3];
        for i in 0..3 {
            out[i] = if leaf[i] == m {
                real[i]
            } else if self.depth[leaf[i]] > self.depth[m] && self.ancestor_at(leaf[i], self.depth[m]) == m {
                let a = self.ancestor_at(leaf[i], self.depth[m] + 1);
                t.twin(t.node(a).parent_edge.unwrap()).unwrap()
            } else {
                t.node(m).parent_edge.ok_or_else(|| LpError::Invariant(format!("root is not a median of {c:?}")))?
            };
        }
        if out[0] == out[1] || out[0] == out[2] || out[1] == out[2] {
            return Err(LpError::Invariant(format!("triple {c:?} does not split at node {m}")));
        }
        Ok((m, out))
    }

    pub fn place(&self, c: &ConstraintTriple) -> Result<Placement, LpError> {
        let (m, es) = self.locate(c)?;
        let t = self.tree;
        match t.kind(m) {
            NodeKind::R => Ok(Placement::Rigid { node: m, reference_ccw: self.reference_ccw(c.w, es)? }),
            NodeKind::P => {
                let (u, v) = t.node(m).poles;
                let l = es.map(|e| self.p_label[e]);
                if c.w == u {
                    Ok(Placement::Parallel { node: m, labels: l })
                } else if c.w == v {
                    Ok(Placement::Parallel { node: m, labels: [l[2], l[1], l[0]] })
                } else {
                    Err(LpError::Invariant(format!("vertex {} is not a pole of P-node {m}", c.w)))
                }
            }
            k => Err(LpError::Invariant(format!("triple {c:?} has median of kind {}", k.as_str()))),
        }
    }

    fn reference_ccw(&self, w: VertexId, es: [SkelEdgeId; 3]) -> Result<bool, LpError> {
        let t = self.tree;
        let emb = t.embedding().ok_or_else(|| LpError::Invariant("tree has no embedding".into()))?;
        let end = |e: SkelEdgeId| 2 * e + t.sedge(e).side_at(w);
        let (a, b, c) = (end(es[0]), end(es[1]), end(es[2]));
        let mut z = emb.next[a];
        while z != a {
            if z == b {
                return Ok(true);
            }
            if z == c {
                return Ok(false);
            }
            z = emb.next[z];
        }
        Err(LpError::Invariant(format!("skeleton edges {es:?} are not all at vertex {w}")))
    }

    /// Nearest proper ancestor that is a flippable R-node.
    pub fn r_anchor(&self, x: NodeId) -> Option<NodeId> {
        let t = self.tree;
        let mut y = t.parent(x)?;
        loop {
            if t.kind(y) == NodeKind::R && y != t.root() {
                return Some(y);
            }
            y = t.parent(y)?;
        }
    }

    /// Absolute parities from per-R-node parities (unset ones are false).
    pub fn parities(&self, y: &BTreeMap<NodeId, bool>) -> Vec<bool> {
        let t = self.tree;
        let mut parity = vec![false; t.nodes.len()];
        for x in t.top_down() {
            parity[x] = match t.parent(x) {
                None => false,
                Some(_) if t.kind(x) == NodeKind::R => y.get(&x).copied().unwrap_or(false),
                Some(p) => parity[p],
            };
        }
        parity
    }

    /// Choice vector with the given absolute R-node parities and P-node
    /// orders (indices into the reference order, applied before parity).
    pub fn choice(&self, y: &BTreeMap<NodeId, bool>, orders: &BTreeMap<NodeId, Vec<usize>>) -> ChoiceVector {
        let t = self.tree;
        let parity = self.parities(y);
        let mut c = ChoiceVector::default();
        for x in t.top_down() {
            match t.kind(x) {
                NodeKind::P => {
                    let k = t.p_reference_order(x).len();
                    c.orders.insert(x, orders.get(&x).cloned().unwrap_or_else(|| (0..k).collect()));
                }
                NodeKind::R => {
                    if let Some(p) = t.parent(x) {
                        c.flips.insert(x, parity[x] ^ parity[p]);
                    }
                }
                _ => {}
            }
        }
        c
    }
}

/// Positions of all labels (0 = parent) when children follow `order`.
pub(crate) fn label_positions(order: &[usize]) -> Vec<usize> {
    let mut pos = vec![0; order.len() + 1];
    for (i, &c) in order.iter().enumerate() {
        pos[c + 1] = i + 1;
    }
    pos
}

/// An order of `k` children such that every labelled triple is cyclic in the
/// sequence (parent, children...). Children are placed left to right; once
/// two labels of a triple are placed, the third one comes later, so the
/// triple's orientation is already decided.
pub(crate) fn order_children(k: usize, cons: &[[usize; 3]], budget: &mut u64) -> Result<Option<Vec<usize>>, SolverError> {
    let mut touching: Vec<Vec<usize>> = vec![Vec::new(); k + 1];
    for (i, c) in cons.iter().enumerate() {
        for &l in c {
            touching[l].push(i);
        }
    }
    let mut pos: Vec<Option<usize>> = vec![None; k + 1];
    pos[0] = Some(0);
    let mut order = Vec::with_capacity(k);
    if place(k, cons, &touching, &mut pos, &mut order, budget)? {
        Ok(Some(order))
    } else {
        Ok(None)
    }
}

fn place(
    k: usize,
    cons: &[[usize; 3]],
    touching: &[Vec<usize>],
    pos: &mut [Option<usize>],
    order: &mut Vec<usize>,
    budget: &mut u64,
) -> Result<bool, SolverError> {
    if order.len() == k {
        return Ok(true);
    }
    let slot = order.len() + 1;
    for c in 0..k {
        if pos[c + 1].is_some() {
            continue;
        }
        if *budget == 0 {
            return Err(SolverError::SearchLimit(ORDER_BUDGET));
        }
        *budget -= 1;
        pos[c + 1] = Some(slot);
        let ok = touching[c + 1].iter().all(|&i| {
            let p = cons[i].map(|l| pos[l]);
            let placed = p.iter().filter(|q| q.is_some()).count();
            placed < 2 || cyclic(p.map(|q| q.unwrap_or(usize::MAX)))
        });
        if ok {
            order.push(c);
            if place(k, cons, touching, pos, order, budget)? {
                return Ok(true);
            }
            order.pop();
        }
        pos[c + 1] = None;
    }
    Ok(false)
}

/// A choice vector of `lp` under which every triple holds, or the reason
/// none exists.
pub fn solve_triples(lp: &LpTree, triples: &[ConstraintTriple]) -> Result<Outcome<ChoiceVector>, SolverError> {
    let loc = TripleLocator::new(lp.tree());
    let root = lp.tree().root();
    let mut y: BTreeMap<NodeId, bool> = BTreeMap::new();
    let mut parallel: BTreeMap<NodeId, Vec<[usize; 3]>> = BTreeMap::new();
    for c in triples {
        match loc.place(c)? {
            Placement::Rigid { node, reference_ccw } => {
                let want = !reference_ccw;
                if node == root && want {
                    return Ok(Outcome::Unsat(format!("root R-node {node} would need to be reflected")));
                }
                if *y.entry(node).or_insert(want) != want {
                    return Ok(Outcome::Unsat(format!("R-node {node} needs both orientations")));
                }
            }
            Placement::Parallel { node, labels } => parallel.entry(node).or_default().push(labels),
        }
    }
    let parity = loc.parities(&y);
    let mut orders = BTreeMap::new();
    for (x, cons) in parallel {
        let cons: Vec<[usize; 3]> =
            cons.into_iter().map(|l| if parity[x] { [l[2], l[1], l[0]] } else { l }).collect();
        let k = lp.tree().p_reference_order(x).len();
        let mut budget = ORDER_BUDGET;
        match order_children(k, &cons, &mut budget)? {
            Some(o) => {
                orders.insert(x, o);
            }
            None => {
                return Ok(Outcome::Unsat(format!("no order of the {k} children of P-node {x} meets its constraints")))
            }
        }
    }
    Ok(Outcome::Sat(loc.choice(&y, &orders)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_accepts_rotations_only() {
        assert!(cyclic([0, 1, 2]));
        assert!(cyclic([1, 2, 0]));
        assert!(cyclic([2, 0, 1]));
        assert!(!cyclic([0, 2, 1]));
        assert!(!cyclic([2, 1, 0]));
    }

    #[test]
    fn precedence_through_parent() {
        // (parent, 2, 1): child 1 before child 0
        let mut b = ORDER_BUDGET;
        let o = order_children(3, &[[0, 2, 1]], &mut b).unwrap().unwrap();
        let p = label_positions(&o);
        assert!(p[2] < p[1]);
    }

    #[test]
    fn contradictory_precedences() {
        let mut b = ORDER_BUDGET;
        assert_eq!(order_children(2, &[[0, 1, 2], [0, 2, 1]], &mut b).unwrap(), None);
    }

    #[test]
    fn brute_force_agreement() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..2000 {
            let k = rng.gen_range(2..=5);
            let n = rng.gen_range(0..5);
            let cons: Vec<[usize; 3]> = (0..n)
                .filter_map(|_| {
                    let a = rng.gen_range(0..=k);
                    let b = rng.gen_range(0..=k);
                    let c = rng.gen_range(0..=k);
                    (a != b && b != c && a != c).then_some([a, b, c])
                })
                .collect();
            let mut perm: Vec<usize> = (0..k).collect();
            let mut any = false;
            loop {
                let p = label_positions(&perm);
                if cons.iter().all(|c| cyclic(c.map(|l| p[l]))) {
                    any = true;
                    break;
                }
                if !crate::decomposition::next_permutation(&mut perm) {
                    break;
                }
            }
            let mut b = ORDER_BUDGET;
            let got = order_children(k, &cons, &mut b).unwrap();
            assert_eq!(got.is_some(), any, "{cons:?}");
            if let Some(o) = got {
                let p = label_positions(&o);
                assert!(cons.iter().all(|c| cyclic(c.map(|l| p[l]))));
            }
        }
    }
}
