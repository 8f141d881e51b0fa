//! Simultaneous level planarity: two graphs sharing a biconnected
//! single-source level graph `G` must be embedded so that they induce the
//! same embedding of `G`.
//!
//! Both `G₁ = G + X₁` and `G₂ = G + X₂` get their own LP-tree. The embedding
//! induced on `G` is fixed by the orientation of the triples `(e₀, x, y)` at
//! every vertex of degree at least three, `e₀` being its first edge. In each
//! tree such a triple depends on one node: an R-node's absolute parity, or a
//! P-node's child order. Child orders are enumerated up to reversal, and the
//! reversal together with the parities becomes a 2-SAT system of equalities.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::json;

use super::triples::{cyclic, label_positions, Placement, TripleLocator};
use super::{ConstraintTriple, Lit, Outcome, SolverError, TwoSatInstance};
use crate::decomposition::{next_permutation, NodeId};
use crate::embedding::{is_level_planar_embedding, RotationSystem};
use crate::levelgraph::{validate, GraphJson, LevelGraph, VertexId};
use crate::lptree::{build_lp_tree, LpError, LpTree};

/// Upper bound on the orders examined per P-node.
pub const ORDER_LIMIT: u64 = 1 << 20;

#[derive(Clone, Debug)]
pub struct SefeInstance {
    pub graph: LevelGraph,
    pub exclusive1: Vec<(VertexId, VertexId)>,
    pub exclusive2: Vec<(VertexId, VertexId)>,
}

#[derive(Serialize, Deserialize)]
struct SefeJson {
    graph: GraphJson,
    #[serde(default)]
    exclusive1: Vec<(String, String)>,
    #[serde(default)]
    exclusive2: Vec<(String, String)>,
}

/// The two graphs and their embeddings, which agree on the shared graph.
#[derive(Clone, Debug)]
pub struct SefeWitness {
    pub graph1: LevelGraph,
    pub embedding1: RotationSystem,
    pub graph2: LevelGraph,
    pub embedding2: RotationSystem,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SefeFailure {
    SharedNotLevelPlanar,
    AloneNotLevelPlanar(usize),
    OrdersDisagree,
}

impl fmt::Display for SefeFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SefeFailure::SharedNotLevelPlanar => write!(f, "shared graph is not level planar"),
            SefeFailure::AloneNotLevelPlanar(i) => write!(f, "graph {i} alone is not level planar"),
            SefeFailure::OrdersDisagree => write!(f, "shared orders cannot agree"),
        }
    }
}

impl SefeInstance {
    pub fn new(
        graph: LevelGraph,
        exclusive1: Vec<(VertexId, VertexId)>,
        exclusive2: Vec<(VertexId, VertexId)>,
    ) -> Result<Self, SolverError> {
        let mut seen = std::collections::HashSet::new();
        for &(u, v) in exclusive1.iter().chain(&exclusive2) {
            if u >= graph.n() || v >= graph.n() {
                return Err(SolverError::Input("exclusive edge names an unknown vertex".into()));
            }
            if graph.level(u) >= graph.level(v) {
                return Err(SolverError::Input(format!(
                    "exclusive edge ({}, {}) does not point upward",
                    graph.id(u),
                    graph.id(v)
                )));
            }
            if graph.edge_between(u, v).is_some() || graph.edge_between(v, u).is_some() {
                return Err(SolverError::Input(format!(
                    "exclusive edge ({}, {}) is already shared",
                    graph.id(u),
                    graph.id(v)
                )));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(SolverError::Input(format!(
                    "exclusive edge ({}, {}) listed twice",
                    graph.id(u),
                    graph.id(v)
                )));
            }
        }
        Ok(SefeInstance { graph, exclusive1, exclusive2 })
    }

    pub fn from_json(text: &str) -> Result<Self, SolverError> {
        let raw: SefeJson = serde_json::from_str(text).map_err(|e| SolverError::Input(e.to_string()))?;
        let graph = raw.graph.into_graph()?;
        let idx = |v: &str| graph.vertex_index(v).ok_or_else(|| SolverError::Input(format!("unknown vertex `{v}`")));
        let conv = |l: &[(String, String)]| {
            l.iter().map(|(a, b)| Ok((idx(a)?, idx(b)?))).collect::<Result<Vec<_>, SolverError>>()
        };
        let x1 = conv(&raw.exclusive1)?;
        let x2 = conv(&raw.exclusive2)?;
        SefeInstance::new(graph, x1, x2)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let g = &self.graph;
        let pairs = |l: &[(VertexId, VertexId)]| l.iter().map(|&(u, v)| json!([g.id(u), g.id(v)])).collect::<Vec<_>>();
        json!({
            "graph": g.to_json_value(),
            "exclusive1": pairs(&self.exclusive1),
            "exclusive2": pairs(&self.exclusive2),
        })
    }

    /// `G₁` and `G₂`; the shared edges keep their ids.
    pub fn graphs(&self) -> Result<(LevelGraph, LevelGraph), SolverError> {
        Ok((self.graph.with_extra_edges(&self.exclusive1)?, self.graph.with_extra_edges(&self.exclusive2)?))
    }

    /// Triples whose orientations determine the embedding of the shared graph.
    pub fn shared_triples(&self) -> Vec<ConstraintTriple> {
        let g = &self.graph;
        let mut out = Vec::new();
        for w in 0..g.n() {
            let inc = g.incident(w);
            for i in 1..inc.len() {
                for j in i + 1..inc.len() {
                    out.push(ConstraintTriple { w, edges: [inc[0], inc[i], inc[j]] });
                }
            }
        }
        out
    }
}

/// True if `a` and `b` induce the same rotations on the first `m` edges.
pub(crate) fn agree_on(m: usize, a: &RotationSystem, b: &RotationSystem) -> bool {
    let keep_a: Vec<bool> = (0..a.rotations().iter().flatten().max().map_or(0, |&x| x + 1)).map(|e| e < m).collect();
    let keep_b: Vec<bool> = (0..b.rotations().iter().flatten().max().map_or(0, |&x| x + 1)).map(|e| e < m).collect();
    let (ra, rb) = (a.restrict(&keep_a), b.restrict(&keep_b));
    ra.rotations().len() == rb.rotations().len()
        && ra.rotations().iter().zip(rb.rotations()).all(|(x, y)| {
            if x.len() != y.len() {
                return false;
            }
            if x.is_empty() {
                return true;
            }
            let Some(i) = y.iter().position(|&e| e == x[0]) else { return false };
            (0..x.len()).all(|k| x[k] == y[(i + k) % y.len()])
        })
}

/// One tree's view of a triple: its orientation is `constant ⊕ var`, where
/// the constant of a P-node triple depends on the enumerated child order.
#[derive(Clone, Copy)]
enum Term {
    Rigid { var: Option<usize>, reference_ccw: bool },
    Parallel { var: usize, node: NodeId, labels: [usize; 3] },
}

struct Side<'a> {
    lp: &'a LpTree,
    loc: TripleLocator<'a>,
    /// Variable of every R-node and relevant P-node.
    vars: BTreeMap<NodeId, usize>,
    /// Per relevant P-node: child orders up to reversal, one per distinct
    /// outcome on the triples placed there.
    classes: BTreeMap<NodeId, Vec<Vec<usize>>>,
}

fn side_terms<'a>(
    lp: &'a LpTree,
    tag: &str,
    triples: &[ConstraintTriple],
    sat: &mut TwoSatInstance,
) -> Result<(Side<'a>, Vec<Term>), SolverError> {
    let loc = TripleLocator::new(lp.tree());
    let root = lp.tree().root();
    let mut vars = BTreeMap::new();
    let mut terms = Vec::with_capacity(triples.len());
    let mut at_p: BTreeMap<NodeId, Vec<[usize; 3]>> = BTreeMap::new();
    for c in triples {
        let t = match loc.place(c)? {
            Placement::Rigid { node, reference_ccw } => {
                let var = (node != root)
                    .then(|| *vars.entry(node).or_insert_with(|| sat.add_var(format!("{tag}:R{node}"))));
                Term::Rigid { var, reference_ccw }
            }
            Placement::Parallel { node, labels } => {
                let var = *vars.entry(node).or_insert_with(|| sat.add_var(format!("{tag}:P{node}")));
                at_p.entry(node).or_default().push(labels);
                Term::Parallel { var, node, labels }
            }
        };
        terms.push(t);
    }
    let mut classes = BTreeMap::new();
    for (x, cons) in at_p {
        let k = lp.tree().p_reference_order(x).len();
        let mut budget = ORDER_LIMIT;
        let mut seen: BTreeMap<Vec<bool>, Vec<usize>> = BTreeMap::new();
        let mut perm: Vec<usize> = (0..k).collect();
        loop {
            if budget == 0 {
                return Err(SolverError::SearchLimit(ORDER_LIMIT));
            }
            budget -= 1;
            let pos = label_positions(&perm);
            let mut sig: Vec<bool> = cons.iter().map(|l| cyclic(l.map(|z| pos[z]))).collect();
            let mut rep = perm.clone();
            if sig[0] {
                sig.iter_mut().for_each(|b| *b = !*b);
                rep.reverse();
            }
            seen.entry(sig).or_insert(rep);
            if !next_permutation(&mut perm) {
                break;
            }
        }
        classes.insert(x, seen.into_values().collect());
    }
    Ok((Side { lp, loc, vars, classes }, terms))
}

fn evaluate(t: &Term, orders: &BTreeMap<NodeId, &Vec<usize>>) -> (bool, Option<usize>) {
    match *t {
        Term::Rigid { var, reference_ccw } => (reference_ccw, var),
        Term::Parallel { var, node, labels } => {
            let pos = label_positions(orders[&node]);
            (cyclic(labels.map(|l| pos[l])), Some(var))
        }
    }
}

/// Embeddings of `G₁` and `G₂` inducing the same embedding of `G`.
pub fn solve_simultaneous(s: &SefeInstance) -> Result<Outcome<SefeWitness>, SolverError> {
    let d = validate(&s.graph);
    if !d.lp_ready() {
        // let the LP-tree report which precondition failed
        build_lp_tree(&s.graph)?;
    }
    if let Err(LpError::NotLevelPlanar) = crate::lptree::reference_embedding(&s.graph) {
        return Ok(Outcome::Unsat(SefeFailure::SharedNotLevelPlanar.to_string()));
    }
    let (g1, g2) = s.graphs()?;
    let build = |g: &LevelGraph, i: usize| match build_lp_tree(g) {
        Ok(lp) => Ok(Ok(lp)),
        Err(LpError::NotLevelPlanar) => Ok(Err(SefeFailure::AloneNotLevelPlanar(i))),
        Err(e) => Err(SolverError::from(e)),
    };
    let lp1 = match build(&g1, 1)? {
        Ok(t) => t,
        Err(f) => return Ok(Outcome::Unsat(f.to_string())),
    };
    let lp2 = match build(&g2, 2)? {
        Ok(t) => t,
        Err(f) => return Ok(Outcome::Unsat(f.to_string())),
    };
    let triples = s.shared_triples();
    let mut base = TwoSatInstance::new(0);
    let (side1, terms1) = side_terms(&lp1, "G1", &triples, &mut base)?;
    let (side2, terms2) = side_terms(&lp2, "G2", &triples, &mut base)?;

    // P-nodes in order of first use, so that coupled nodes are decided together
    let mut slots: Vec<(usize, NodeId)> = Vec::new();
    let mut slot_of: BTreeMap<(usize, NodeId), usize> = BTreeMap::new();
    let mut ready: Vec<Vec<usize>> = Vec::new();
    let mut upfront = Vec::new();
    for (q, pair) in terms1.iter().zip(&terms2).enumerate() {
        let mut last = None;
        for (i, t) in [pair.0, pair.1].into_iter().enumerate() {
            if let Term::Parallel { node, .. } = *t {
                let j = *slot_of.entry((i, node)).or_insert_with(|| {
                    slots.push((i, node));
                    ready.push(Vec::new());
                    slots.len() - 1
                });
                last = last.max(Some(j));
            }
        }
        match last {
            Some(j) => ready[j].push(q),
            None => upfront.push(q),
        }
    }
    let sides = [&side1, &side2];
    let terms = [&terms1, &terms2];
    let mut search = Search {
        zero: base.vars,
        uf: ParityUf::new(base.vars + 1),
        classes: slots.iter().map(|&(i, x)| &sides[i].classes[&x]).collect(),
        slots: &slots,
        ready: &ready,
        terms,
        orders: [BTreeMap::new(), BTreeMap::new()],
        budget: SEARCH_STEPS,
    };
    if !upfront.iter().all(|&q| search.equate(q)) {
        return Ok(Outcome::Unsat(SefeFailure::OrdersDisagree.to_string()));
    }
    if !search.run(0)? {
        return Ok(Outcome::Unsat(SefeFailure::OrdersDisagree.to_string()));
    }
    let orders = search.orders;
    let assign = equalities(&base, &terms1, &terms2, &orders)
        .ok_or_else(|| SolverError::Verification("equalities unsolvable after search".into()))?;
    let e1 = realize_side(&side1, &assign, &orders[0])?;
    let e2 = realize_side(&side2, &assign, &orders[1])?;
    if !is_level_planar_embedding(&g1, &e1)? || !is_level_planar_embedding(&g2, &e2)? {
        return Err(SolverError::Verification("an embedding is not level planar".into()));
    }
    if !agree_on(s.graph.m(), &e1, &e2) {
        return Err(SolverError::Verification("embeddings disagree on the shared graph".into()));
    }
    Ok(Outcome::Sat(SefeWitness { graph1: g1, embedding1: e1, graph2: g2, embedding2: e2 }))
}

/// Steps allowed for the search over P-node orders.
pub const SEARCH_STEPS: u64 = 1 << 22;

/// Union-find over variables with the parity of each variable relative to
/// its root; unions can be undone in reverse order.
struct ParityUf {
    parent: Vec<usize>,
    rank: Vec<u8>,
    parity: Vec<bool>,
    undo: Vec<(usize, usize, bool)>,
}

impl ParityUf {
    fn new(n: usize) -> Self {
        ParityUf { parent: (0..n).collect(), rank: vec![0; n], parity: vec![false; n], undo: Vec::new() }
    }

    fn find(&self, mut x: usize) -> (usize, bool) {
        let mut p = false;
        while self.parent[x] != x {
            p ^= self.parity[x];
            x = self.parent[x];
        }
        (x, p)
    }

    /// Records `a ⊕ b = c`; false if that contradicts earlier records.
    fn union(&mut self, a: usize, b: usize, c: bool) -> bool {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            return pa ^ pb == c;
        }
        let (hi, lo) = if self.rank[ra] >= self.rank[rb] { (ra, rb) } else { (rb, ra) };
        let bumped = self.rank[hi] == self.rank[lo];
        self.parent[lo] = hi;
        self.parity[lo] = pa ^ pb ^ c;
        if bumped {
            self.rank[hi] += 1;
        }
        self.undo.push((lo, hi, bumped));
        true
    }

    fn rollback(&mut self, len: usize) {
        while self.undo.len() > len {
            let (lo, hi, bumped) = self.undo.pop().unwrap();
            self.parent[lo] = lo;
            self.parity[lo] = false;
            if bumped {
                self.rank[hi] -= 1;
            }
        }
    }
}

/// Depth-first choice of one order class per P-node; each triple is
/// checked as soon as the orders it depends on are chosen.
struct Search<'a> {
    zero: usize,
    uf: ParityUf,
    classes: Vec<&'a Vec<Vec<usize>>>,
    slots: &'a [(usize, NodeId)],
    ready: &'a [Vec<usize>],
    terms: [&'a Vec<Term>; 2],
    orders: [BTreeMap<NodeId, &'a Vec<usize>>; 2],
    budget: u64,
}

impl<'a> Search<'a> {
    fn equate(&mut self, q: usize) -> bool {
        let (c1, v1) = evaluate(&self.terms[0][q], &self.orders[0]);
        let (c2, v2) = evaluate(&self.terms[1][q], &self.orders[1]);
        self.uf.union(v1.unwrap_or(self.zero), v2.unwrap_or(self.zero), c1 ^ c2)
    }

    fn run(&mut self, j: usize) -> Result<bool, SolverError> {
        if j == self.slots.len() {
            return Ok(true);
        }
        let (i, x) = self.slots[j];
        let classes = self.classes[j];
        for o in classes {
            if self.budget == 0 {
                return Err(SolverError::SearchLimit(SEARCH_STEPS));
            }
            self.budget -= 1;
            self.orders[i].insert(x, o);
            let mark = self.uf.undo.len();
            let ok = (0..self.ready[j].len()).all(|r| {
                let q = self.ready[j][r];
                self.equate(q)
            });
            if ok && self.run(j + 1)? {
                return Ok(true);
            }
            self.uf.rollback(mark);
        }
        self.orders[i].remove(&x);
        Ok(false)
    }
}

/// Solves `orientation in G₁ = orientation in G₂` for every triple.
fn equalities(
    base: &TwoSatInstance,
    t1: &[Term],
    t2: &[Term],
    orders: &[BTreeMap<NodeId, &Vec<usize>>; 2],
) -> Option<Vec<bool>> {
    let mut sat = base.clone();
    for (a, b) in t1.iter().zip(t2) {
        let (c1, v1) = evaluate(a, &orders[0]);
        let (c2, v2) = evaluate(b, &orders[1]);
        let c = c1 ^ c2;
        match (v1, v2) {
            (None, None) if c => return None,
            (None, None) => {}
            (Some(x), None) | (None, Some(x)) => sat.unit(Lit::of(x, c)),
            (Some(x), Some(y)) => sat.xor(x, y, c),
        }
    }
    sat.solve().ok()
}

fn realize_side(sd: &Side, assign: &[bool], orders: &BTreeMap<NodeId, &Vec<usize>>) -> Result<RotationSystem, SolverError> {
    let t = sd.lp.tree();
    let mut y = BTreeMap::new();
    for (&x, &v) in &sd.vars {
        if t.kind(x) == crate::decomposition::NodeKind::R {
            y.insert(x, assign[v]);
        }
    }
    let parity = sd.loc.parities(&y);
    let mut chosen = BTreeMap::new();
    for (&x, &o) in orders {
        let mut o = o.clone();
        if assign[sd.vars[&x]] ^ parity[x] {
            o.reverse();
        }
        chosen.insert(x, o);
    }
    Ok(sd.lp.realize(&sd.loc.choice(&y, &chosen))?)
}
