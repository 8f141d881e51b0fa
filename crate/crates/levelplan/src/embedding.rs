//! Combinatorial embeddings (rotation systems), face tracing, the level-planarity
//! test on embeddings, st-augmentation, and conversion to and from level drawings.
//!
//! Conventions: a rotation lists the edges around a vertex in counter-clockwise
//! order. A dart is `2 * e` (tail to head) or `2 * e + 1` (head to tail). The
//! face of a dart is the face on its left; it is traced by following, at the
//! head of each dart, the clockwise neighbour of the edge just used.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::levelgraph::{properize, EdgeId, LevelGraph, ProperMap, VertexId};

pub mod planar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmbeddingError {
    #[error("rotation system does not match the graph: {0}")]
    Mismatch(String),
    #[error("rotation system is not planar (Euler characteristic check failed)")]
    NotPlanar,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("embedding is not level-planar: {0}")]
    NotLevelPlanar(String),
    #[error("drawing is malformed: {0}")]
    MalformedDrawing(String),
    #[error("drawing has crossing edges {0} and {1}")]
    Crossing(String, String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RotationSystem {
    rot: Vec<Vec<EdgeId>>,
}

impl RotationSystem {
    /// Wraps per-vertex counter-clockwise edge lists without checking them.
    pub fn from_lists(rot: Vec<Vec<EdgeId>>) -> Self {
        RotationSystem { rot }
    }

    /// Wraps per-vertex edge lists after checking that every edge occurs once at each endpoint.
    pub fn new(g: &LevelGraph, rot: Vec<Vec<EdgeId>>) -> Result<Self, EmbeddingError> {
        let r = RotationSystem { rot };
        r.check(g)?;
        Ok(r)
    }

    /// Rotation listing each vertex's edges in insertion order.
    pub fn incidence_order(g: &LevelGraph) -> Self {
        RotationSystem { rot: (0..g.n()).map(|v| g.incident(v).to_vec()).collect() }
    }

    pub fn rotation(&self, v: VertexId) -> &[EdgeId] {
        &self.rot[v]
    }

    pub fn rotations(&self) -> &[Vec<EdgeId>] {
        &self.rot
    }

    pub fn check(&self, g: &LevelGraph) -> Result<(), EmbeddingError> {
        if self.rot.len() != g.n() {
            return Err(EmbeddingError::Mismatch(format!(
                "{} rotations for {} vertices",
                self.rot.len(),
                g.n()
            )));
        }
        let mut seen = vec![0u8; g.m()];
        for (v, r) in self.rot.iter().enumerate() {
            if r.len() != g.degree(v) {
                return Err(EmbeddingError::Mismatch(format!("rotation of `{}` has wrong length", g.id(v))));
            }
            for &e in r {
                if e >= g.m() {
                    return Err(EmbeddingError::Mismatch(format!("unknown edge #{e}")));
                }
                let (a, b) = g.edge(e);
                let bit = if a == v {
                    1
                } else if b == v {
                    2
                } else {
                    return Err(EmbeddingError::Mismatch(format!("edge #{e} is not incident to `{}`", g.id(v))));
                };
                if seen[e] & bit != 0 {
                    return Err(EmbeddingError::Mismatch(format!("edge #{e} repeated at `{}`", g.id(v))));
                }
                seen[e] |= bit;
            }
        }
        Ok(())
    }

    /// The mirror image: every rotation reversed.
    pub fn reflect(&self) -> Self {
        RotationSystem {
            rot: self.rot.iter().map(|r| r.iter().rev().copied().collect()).collect(),
        }
    }

    /// Position of each edge in the rotation at its tail (`[0]`) and head (`[1]`).
    pub fn positions(&self, g: &LevelGraph) -> Vec<[u32; 2]> {
        let mut pos = vec![[0u32; 2]; g.m()];
        for (v, r) in self.rot.iter().enumerate() {
            for (i, &e) in r.iter().enumerate() {
                let side = usize::from(g.edge(e).0 != v);
                pos[e][side] = i as u32;
            }
        }
        pos
    }

    /// True if `x`, `y`, `z` (edges at `v`) appear in this counter-clockwise cyclic order.
    pub fn is_ccw(&self, v: VertexId, x: EdgeId, y: EdgeId, z: EdgeId) -> bool {
        let r = &self.rot[v];
        let p = |e: EdgeId| r.iter().position(|&f| f == e);
        match (p(x), p(y), p(z)) {
            (Some(a), Some(b), Some(c)) => {
                let n = r.len();
                let rb = (b + n - a) % n;
                let rc = (c + n - a) % n;
                rb < rc
            }
            _ => false,
        }
    }

    /// Restriction to a subset of edges (the other edges are deleted from every rotation).
    pub fn restrict(&self, keep: &[bool]) -> Self {
        RotationSystem {
            rot: self.rot.iter().map(|r| r.iter().copied().filter(|&e| keep[e]).collect()).collect(),
        }
    }
}

pub type Dart = usize;

pub fn dart(e: EdgeId, backwards: bool) -> Dart {
    2 * e + usize::from(backwards)
}

pub fn dart_edge(d: Dart) -> EdgeId {
    d / 2
}

pub fn dart_tail(g: &LevelGraph, d: Dart) -> VertexId {
    let (u, v) = g.edge(d / 2);
    if d % 2 == 0 {
        u
    } else {
        v
    }
}

pub fn dart_head(g: &LevelGraph, d: Dart) -> VertexId {
    let (u, v) = g.edge(d / 2);
    if d % 2 == 0 {
        v
    } else {
        u
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub darts: Vec<Dart>,
    pub apex_level: u32,
    pub apex_vertices: Vec<VertexId>,
    pub is_outer: bool,
}

impl Face {
    pub fn vertices<'a>(&'a self, g: &'a LevelGraph) -> impl Iterator<Item = VertexId> + 'a {
        self.darts.iter().map(move |&d| dart_tail(g, d))
    }
}

#[derive(Clone, Debug)]
pub struct Faces {
    pub faces: Vec<Face>,
    pub face_of_dart: Vec<usize>,
    pub outer: Option<usize>,
}

impl Faces {
    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn left_of(&self, d: Dart) -> &Face {
        &self.faces[self.face_of_dart[d]]
    }
}

/// The dart following `d` on the face to its left.
pub fn next_dart(g: &LevelGraph, e: &RotationSystem, pos: &[[u32; 2]], d: Dart) -> Dart {
    let x = d / 2;
    let (a, b) = g.edge(x);
    let (v, side) = if d % 2 == 0 { (b, 1) } else { (a, 0) };
    let r = e.rotation(v);
    let p = pos[x][side] as usize;
    let y = r[(p + r.len() - 1) % r.len()];
    dart(y, g.edge(y).0 != v)
}

/// Traces all faces. The outer face is the face left of the dart `s -> t` when
/// the graph has a source `s`, a unique apex `t` and the edge `(s, t)`.
pub fn trace_faces(g: &LevelGraph, e: &RotationSystem) -> Result<Faces, EmbeddingError> {
    e.check(g)?;
    let pos = e.positions(g);
    let mut face_of_dart = vec![usize::MAX; 2 * g.m()];
    let mut faces = Vec::new();
    for start in 0..2 * g.m() {
        if face_of_dart[start] != usize::MAX {
            continue;
        }
        let id = faces.len();
        let mut darts = Vec::new();
        let mut d = start;
        loop {
            face_of_dart[d] = id;
            darts.push(d);
            d = next_dart(g, e, &pos, d);
            if d == start {
                break;
            }
            if face_of_dart[d] != usize::MAX {
                return Err(EmbeddingError::Mismatch("face walk does not close".into()));
            }
        }
        let apex_level = darts.iter().map(|&d| g.level(dart_tail(g, d))).max().unwrap_or(0);
        let mut apex_vertices: Vec<_> =
            darts.iter().map(|&d| dart_tail(g, d)).filter(|&v| g.level(v) == apex_level).collect();
        apex_vertices.sort_unstable();
        apex_vertices.dedup();
        faces.push(Face { darts, apex_level, apex_vertices, is_outer: false });
    }
    // Euler: per connected component with edges, V - E + F = 2.
    let comps = edge_components(g);
    let touched = (0..g.n()).filter(|&v| g.degree(v) > 0).count() as i64;
    if touched - g.m() as i64 + faces.len() as i64 != 2 * comps as i64 {
        return Err(EmbeddingError::NotPlanar);
    }
    let mut outer = None;
    if let Some((s, _, st)) = g.st() {
        let f = face_of_dart[dart(st, g.edge(st).0 != s)];
        faces[f].is_outer = true;
        outer = Some(f);
    }
    Ok(Faces { faces, face_of_dart, outer })
}

fn edge_components(g: &LevelGraph) -> usize {
    let mut seen = vec![false; g.n()];
    let mut count = 0;
    for r in 0..g.n() {
        if seen[r] || g.degree(r) == 0 {
            continue;
        }
        count += 1;
        seen[r] = true;
        let mut stack = vec![r];
        while let Some(v) = stack.pop() {
            for &x in g.incident(v) {
                let w = g.other(x, v);
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    count
}

fn check_level_preconditions(g: &LevelGraph) -> Result<VertexId, EmbeddingError> {
    let sources = g.sources();
    if sources.len() != 1 {
        return Err(EmbeddingError::Precondition(format!("{} sources", sources.len())));
    }
    let t = g.apex().ok_or_else(|| EmbeddingError::Precondition("apex is not unique".into()))?;
    if g.edge_between(sources[0], t).is_none() {
        return Err(EmbeddingError::Precondition("edge (s, t) missing".into()));
    }
    Ok(t)
}

/// Level-planarity of an embedding: every vertex below the apex must see an
/// incident face whose apex lies strictly above the vertex's demand.
pub fn is_level_planar_embedding(g: &LevelGraph, e: &RotationSystem) -> Result<bool, EmbeddingError> {
    let t = check_level_preconditions(g)?;
    let faces = trace_faces(g, e)?;
    Ok(first_starved_vertex(g, &faces, t, true).is_none())
}

/// A vertex violating the level-planarity condition, if any.
pub(crate) fn first_starved_vertex(
    g: &LevelGraph,
    faces: &Faces,
    t: VertexId,
    demands: bool,
) -> Option<VertexId> {
    (0..g.n()).filter(|&v| v != t).find(|&v| {
        let need = if demands { g.demand(v) } else { g.level(v) };
        !g.incident(v).iter().any(|&x| {
            let d = dart(x, g.edge(x).0 != v);
            faces.left_of(d).apex_level > need
        })
    })
}

/// Adds edges from every sink other than the apex to the apex of its highest
/// incident face, extending the given level-planar embedding. The returned
/// graph keeps vertex ids, appends the new edges after the original ones, and
/// resets demands to levels.
pub fn st_augment(
    g: &LevelGraph,
    e: &RotationSystem,
) -> Result<(LevelGraph, RotationSystem), EmbeddingError> {
    let t = check_level_preconditions(g)?;
    let plain = demand_free(g);
    let faces = trace_faces(&plain, e)?;
    if let Some(v) = first_starved_vertex(&plain, &faces, t, false) {
        return Err(EmbeddingError::NotLevelPlanar(format!("vertex `{}` sees no higher face", g.id(v))));
    }
    let mut cur = plain;
    let mut rot = e.rot.clone();
    loop {
        let sink = (0..cur.n()).find(|&v| v != t && cur.out_edges(v).next().is_none());
        let Some(w) = sink else { break };
        let emb = RotationSystem { rot: rot.clone() };
        let faces = trace_faces(&cur, &emb)?;
        // highest incident face, ties by smallest apex id
        let mut best: Option<(usize, VertexId)> = None;
        for &x in cur.incident(w) {
            let f = faces.face_of_dart[dart(x, cur.edge(x).0 != w)];
            let face = &faces.faces[f];
            let a = *face.apex_vertices.iter().min_by(|&&p, &&q| cur.id(p).cmp(cur.id(q))).unwrap();
            let better = match best {
                None => true,
                Some((bf, ba)) => {
                    let bl = faces.faces[bf].apex_level;
                    face.apex_level > bl || (face.apex_level == bl && cur.id(a) < cur.id(ba))
                }
            };
            if better {
                best = Some((f, a));
            }
        }
        let Some((f, a)) = best else {
            return Err(EmbeddingError::NotLevelPlanar(format!("isolated sink `{}`", cur.id(w))));
        };
        if cur.level(a) <= cur.level(w) {
            return Err(EmbeddingError::NotLevelPlanar(format!("sink `{}` has no higher face", cur.id(w))));
        }
        let face = &faces.faces[f];
        let new_edge = cur.m();
        let pos = emb.positions(&cur);
        for x in [w, a] {
            // corner of `face` at x: dart into x followed by dart out of x
            let k = face.darts.len();
            let i = (0..k).find(|&i| dart_tail(&cur, face.darts[(i + 1) % k]) == x).unwrap();
            let out = dart_edge(face.darts[(i + 1) % k]);
            let side = usize::from(cur.edge(out).0 != x);
            let p = pos[out][side] as usize;
            rot[x].insert(p + 1, new_edge);
        }
        cur = cur.with_extra_edges(&[(w, a)]).map_err(|err| EmbeddingError::Precondition(err.to_string()))?;
    }
    let out = RotationSystem { rot };
    out.check(&cur)?;
    Ok((cur, out))
}

pub(crate) fn demand_free(g: &LevelGraph) -> LevelGraph {
    if g.has_demands() {
        g.without_demands()
    } else {
        g.clone()
    }
}

/// Per-level left-to-right order of the vertices of the properized graph.
/// `levels[i]` holds level `i + 1`; entries index into `properize(g).0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LevelDrawing {
    pub levels: Vec<Vec<VertexId>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct DrawingJson {
    pub levels: Vec<Vec<String>>,
}

impl LevelDrawing {
    pub fn to_json(&self, proper: &LevelGraph) -> DrawingJson {
        DrawingJson {
            levels: self.levels.iter().map(|l| l.iter().map(|&v| proper.id(v).to_string()).collect()).collect(),
        }
    }

    pub fn from_json(proper: &LevelGraph, d: &DrawingJson) -> Result<Self, EmbeddingError> {
        let mut levels = Vec::new();
        for l in &d.levels {
            let mut row = Vec::new();
            for id in l {
                row.push(
                    proper
                        .vertex_index(id)
                        .ok_or_else(|| EmbeddingError::MalformedDrawing(format!("unknown vertex `{id}`")))?,
                );
            }
            levels.push(row);
        }
        Ok(LevelDrawing { levels })
    }

    /// Left-to-right order of the original vertices on `level`.
    pub fn originals_on(&self, level: u32, map: &ProperMap) -> Vec<VertexId> {
        self.levels
            .get(level as usize - 1)
            .map(|l| l.iter().copied().filter(|&v| !map.is_dummy(v)).collect())
            .unwrap_or_default()
    }

    fn positions(&self, proper: &LevelGraph) -> Result<Vec<usize>, EmbeddingError> {
        let mut pos = vec![usize::MAX; proper.n()];
        for (i, l) in self.levels.iter().enumerate() {
            for (j, &v) in l.iter().enumerate() {
                if v >= proper.n() {
                    return Err(EmbeddingError::MalformedDrawing(format!("unknown vertex #{v}")));
                }
                if proper.level(v) as usize != i + 1 {
                    return Err(EmbeddingError::MalformedDrawing(format!(
                        "`{}` placed on level {} but lives on level {}",
                        proper.id(v),
                        i + 1,
                        proper.level(v)
                    )));
                }
                if pos[v] != usize::MAX {
                    return Err(EmbeddingError::MalformedDrawing(format!("`{}` placed twice", proper.id(v))));
                }
                pos[v] = j;
            }
        }
        if let Some(v) = pos.iter().position(|&p| p == usize::MAX) {
            return Err(EmbeddingError::MalformedDrawing(format!("`{}` not placed", proper.id(v))));
        }
        Ok(pos)
    }
}

/// First crossing pair of proper edges, if any. `pos` gives each proper vertex's index on its level.
fn find_crossing(proper: &LevelGraph, pos: &[usize]) -> Option<(EdgeId, EdgeId)> {
    let mut by_level: BTreeMap<u32, Vec<EdgeId>> = BTreeMap::new();
    for (x, &(u, _)) in proper.edges().iter().enumerate() {
        by_level.entry(proper.level(u)).or_default().push(x);
    }
    for (_, mut es) in by_level {
        es.sort_by_key(|&x| {
            let (u, v) = proper.edge(x);
            (pos[u], pos[v])
        });
        for w in es.windows(2) {
            if pos[proper.edge(w[0]).1] > pos[proper.edge(w[1]).1] {
                return Some((w[0], w[1]));
            }
        }
    }
    None
}

/// Rotation system of a crossing-free drawing: at every vertex, incoming edges
/// from left to right followed by outgoing edges from right to left.
pub fn drawing_to_embedding(g: &LevelGraph, d: &LevelDrawing) -> Result<RotationSystem, EmbeddingError> {
    let (proper, map) = properize(g);
    drawing_to_embedding_with(g, &proper, &map, d)
}

pub(crate) fn drawing_to_embedding_with(
    g: &LevelGraph,
    proper: &LevelGraph,
    map: &ProperMap,
    d: &LevelDrawing,
) -> Result<RotationSystem, EmbeddingError> {
    let pos = d.positions(proper)?;
    if let Some((a, b)) = find_crossing(proper, &pos) {
        let name = |x: EdgeId| {
            let (u, v) = g.edge(map.origin[x]);
            format!("({}, {})", g.id(u), g.id(v))
        };
        return Err(EmbeddingError::Crossing(name(a), name(b)));
    }
    let mut rot = Vec::with_capacity(g.n());
    for v in 0..g.n() {
        let mut ins: Vec<(usize, EdgeId)> = Vec::new();
        let mut outs: Vec<(usize, EdgeId)> = Vec::new();
        for &x in g.incident(v) {
            let chain = &map.chains[x];
            if g.edge(x).1 == v {
                let (lower, _) = proper.edge(*chain.last().unwrap());
                ins.push((pos[lower], x));
            } else {
                let (_, upper) = proper.edge(chain[0]);
                outs.push((pos[upper], x));
            }
        }
        ins.sort_unstable();
        outs.sort_unstable_by(|a, b| b.cmp(a));
        rot.push(ins.into_iter().chain(outs).map(|(_, x)| x).collect());
    }
    Ok(RotationSystem { rot })
}

/// Crossing-free drawing whose induced embedding satisfies every demand.
pub fn is_level_planar_drawing(g: &LevelGraph, d: &LevelDrawing) -> bool {
    match drawing_to_embedding(g, d) {
        Err(_) => false,
        Ok(e) => !g.has_demands() || is_level_planar_embedding(g, &e).unwrap_or(false),
    }
}

/// A level drawing realizing a level-planar embedding: st-augment, then sweep
/// each level in the order in which a leftmost-first depth-first search from
/// the source discovers the vertices.
pub fn embedding_to_drawing(g: &LevelGraph, e: &RotationSystem) -> Result<LevelDrawing, EmbeddingError> {
    let (gst, est) = st_augment(g, e)?;
    let (pst, mst) = properize(&gst);
    let (pg, mg) = properize(g);
    // rotation of the properized st-graph, as neighbour lists
    let mut prot: Vec<Vec<EdgeId>> = vec![Vec::new(); pst.n()];
    for v in 0..gst.n() {
        for &x in est.rotation(v) {
            let chain = &mst.chains[x];
            prot[v].push(if gst.edge(x).0 == v { chain[0] } else { *chain.last().unwrap() });
        }
    }
    for v in gst.n()..pst.n() {
        let inc = pst.incident(v);
        prot[v] = inc.to_vec();
    }
    let s = gst.source().expect("single source");
    let (_, t, st) = gst.st().expect("edge (s, t)");
    let _ = t;
    let st_first = mst.chains[st][0];
    let mut seen = vec![false; pst.n()];
    let mut order = Vec::with_capacity(pst.n());
    let mut stack = vec![s];
    while let Some(v) = stack.pop() {
        if seen[v] {
            continue;
        }
        seen[v] = true;
        order.push(v);
        let r = &prot[v];
        let k = r.len();
        let is_out = |x: EdgeId| pst.edge(x).0 == v;
        // leftmost outgoing edge: the one just before an incoming edge (or (s,t) at the source)
        let start = if v == s {
            r.iter().position(|&x| x == st_first)
        } else {
            (0..k).find(|&i| is_out(r[i]) && !is_out(r[(i + 1) % k]))
        };
        let Some(start) = start else { continue };
        let mut left_to_right = Vec::new();
        let mut i = start;
        loop {
            if !is_out(r[i]) {
                break;
            }
            left_to_right.push(pst.edge(r[i]).1);
            i = (i + k - 1) % k;
            if i == start {
                break;
            }
        }
        for &w in left_to_right.iter().rev() {
            if !seen[w] {
                stack.push(w);
            }
        }
    }
    if order.len() != pst.n() {
        return Err(EmbeddingError::NotLevelPlanar("augmented graph is not reachable from s".into()));
    }
    // map properized st-graph vertices to properized g vertices, dropping augmentation dummies
    let mut to_g: HashMap<VertexId, VertexId> = HashMap::new();
    for v in 0..g.n() {
        to_g.insert(v, v);
    }
    for x in 0..g.m() {
        let a = &mst.chains[x];
        let b = &mg.chains[x];
        for (pa, pb) in a.iter().zip(b.iter()).take(a.len() - 1) {
            to_g.insert(pst.edge(*pa).1, pg.edge(*pb).1);
        }
    }
    let k = g.max_level() as usize;
    let mut levels = vec![Vec::new(); k];
    for v in order {
        if let Some(&w) = to_g.get(&v) {
            let l = pst.level(v) as usize;
            if l <= k {
                levels[l - 1].push(w);
            }
        }
    }
    Ok(LevelDrawing { levels })
}

/// Deterministic key of an embedding: per vertex (sorted by id) the neighbour
/// ids in counter-clockwise order starting from the smallest id. A mirror
/// image gets a different key unless every vertex has degree at most two.
pub fn canonical_form(g: &LevelGraph, e: &RotationSystem) -> String {
    let mut order: Vec<VertexId> = (0..g.n()).collect();
    order.sort_by(|&a, &b| g.id(a).cmp(g.id(b)));
    let mut key = String::new();
    for v in order {
        let nb: Vec<&str> = e.rotation(v).iter().map(|&x| g.id(g.other(x, v))).collect();
        let start = (0..nb.len()).min_by(|&i, &j| nb[i].cmp(nb[j])).unwrap_or(0);
        key.push_str(g.id(v));
        key.push(':');
        for i in 0..nb.len() {
            if i > 0 {
                key.push(',');
            }
            key.push_str(nb[(start + i) % nb.len()]);
        }
        key.push(';');
    }
    key
}
