//! Brute-force ground truth: enumerate every crossing-free level drawing of a
//! small graph and collect the embeddings they induce.
//!
//! Demands are modelled by a pendant path from `v` up to level `d(v)`, so the
//! enumeration never consults the face-based level-planarity test.

use std::collections::{BTreeMap, HashSet};

use thiserror::Error;

use crate::embedding::{canonical_form, RotationSystem};
use crate::levelgraph::{properize, EdgeId, LevelGraph, Vertex, VertexId};

mod verdict;
pub use verdict::{brute_force_verdict, Instance, Verdict, Witness};

pub const DEFAULT_GUARD: usize = 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph has {n} vertices, above the oracle guard of {guard}")]
    Guard { n: usize, guard: usize },
    #[error("{0}")]
    Invalid(String),
}

/// Level-planar embeddings keyed by [`canonical_form`].
#[derive(Clone, Debug, Default)]
pub struct EmbeddingSet {
    pub embeddings: BTreeMap<String, RotationSystem>,
}

impl EmbeddingSet {
    pub fn count(&self) -> usize {
        self.embeddings.len()
    }

    pub fn keys(&self) -> impl Iterator<Item = &String> {
        self.embeddings.keys()
    }

    pub fn contains(&self, key: &str) -> bool {
        self.embeddings.contains_key(key)
    }
}

pub fn brute_force_embeddings(g: &LevelGraph) -> Result<EmbeddingSet, OracleError> {
    brute_force_embeddings_guarded(g, DEFAULT_GUARD)
}

pub fn brute_force_embeddings_guarded(g: &LevelGraph, guard: usize) -> Result<EmbeddingSet, OracleError> {
    if g.n() > guard {
        return Err(OracleError::Guard { n: g.n(), guard });
    }
    let mut seen: HashSet<Vec<Vec<EdgeId>>> = HashSet::new();
    let mut out = EmbeddingSet::default();
    for_each_drawing_rotation(g, |rot| {
        let norm = normalize(&rot);
        if seen.insert(norm) {
            let key = canonical_form(g, &rot);
            out.embeddings.insert(key, rot);
        }
        true
    });
    Ok(out)
}

fn normalize(r: &RotationSystem) -> Vec<Vec<EdgeId>> {
    r.rotations()
        .iter()
        .map(|l| {
            let i = (0..l.len()).min_by_key(|&i| l[i]).unwrap_or(0);
            (0..l.len()).map(|k| l[(i + k) % l.len()]).collect()
        })
        .collect()
}

/// Calls `visit` with the embedding of `g` induced by every crossing-free level
/// drawing of `g` plus its demand pendants; stops early when `visit` returns false.
pub fn for_each_drawing_rotation(g: &LevelGraph, mut visit: impl FnMut(RotationSystem) -> bool) {
    for_each_drawing(g, |_, rot| visit(rot));
}

/// As [`for_each_drawing_rotation`], also passing every vertex's index on
/// its level. Vertices of `g` keep their ids; dummies come after them.
pub fn for_each_drawing(g: &LevelGraph, mut visit: impl FnMut(&[usize], RotationSystem) -> bool) {
    let mut vs: Vec<Vertex> = g.vertices().to_vec();
    let mut es: Vec<(VertexId, VertexId)> = g.edges().to_vec();
    for v in 0..g.n() {
        if g.demand(v) > g.level(v) {
            let p = vs.len();
            vs.push(Vertex { id: format!("{}^demand", g.id(v)), level: g.demand(v), demand: g.demand(v) });
            es.push((v, p));
        }
    }
    for v in &mut vs {
        v.demand = v.level;
    }
    let ext = LevelGraph::new(vs, es).expect("pendants point upward");
    let (proper, map) = properize(&ext);
    let k = proper.max_level() as usize;
    let mut levels: Vec<Vec<VertexId>> = vec![Vec::new(); k];
    for v in 0..proper.n() {
        levels[proper.level(v) as usize - 1].push(v);
    }
    let parents: Vec<Vec<VertexId>> =
        (0..proper.n()).map(|v| proper.in_edges(v).map(|x| proper.edge(x).0).collect()).collect();
    let mut pos = vec![0usize; proper.n()];
    let mut search = Search { levels: &levels, parents: &parents, pos: &mut pos, stop: false };
    search.level(0, &mut |pos: &[usize]| {
        let mut rot = Vec::with_capacity(g.n());
        for v in 0..g.n() {
            let mut ins: Vec<(usize, EdgeId)> = Vec::new();
            let mut outs: Vec<(usize, EdgeId)> = Vec::new();
            for &x in g.incident(v) {
                let chain = &map.chains[x];
                if g.edge(x).1 == v {
                    ins.push((pos[proper.edge(*chain.last().unwrap()).0], x));
                } else {
                    outs.push((pos[proper.edge(chain[0]).1], x));
                }
            }
            ins.sort_unstable();
            outs.sort_unstable_by(|a, b| b.cmp(a));
            rot.push(ins.into_iter().chain(outs).map(|(_, x)| x).collect());
        }
        visit(pos, RotationSystem::from_lists(rot))
    });
}

struct Search<'a> {
    levels: &'a [Vec<VertexId>],
    parents: &'a [Vec<VertexId>],
    pos: &'a mut [usize],
    stop: bool,
}

impl Search<'_> {
    fn level(&mut self, i: usize, emit: &mut dyn FnMut(&[usize]) -> bool) {
        if i == self.levels.len() {
            if !emit(self.pos) {
                self.stop = true;
            }
            return;
        }
        let row = &self.levels[i];
        let span: Vec<(i64, i64)> = row
            .iter()
            .map(|&v| {
                let ps = &self.parents[v];
                if ps.is_empty() {
                    (i64::MAX, i64::MIN)
                } else {
                    let lo = ps.iter().map(|&p| self.pos[p] as i64).min().unwrap();
                    let hi = ps.iter().map(|&p| self.pos[p] as i64).max().unwrap();
                    (lo, hi)
                }
            })
            .collect();
        let mut used = vec![false; row.len()];
        self.place(i, 0, i64::MIN, &span, &mut used, emit);
    }

    fn place(
        &mut self,
        i: usize,
        slot: usize,
        reach: i64,
        span: &[(i64, i64)],
        used: &mut [bool],
        emit: &mut dyn FnMut(&[usize]) -> bool,
    ) {
        let row = &self.levels[i];
        if slot == row.len() {
            self.level(i + 1, emit);
            return;
        }
        for z in 0..row.len() {
            if self.stop {
                return;
            }
            if used[z] || span[z].0 < reach {
                continue;
            }
            // everything placed later must start at or after z's rightmost parent
            let fits = (0..row.len()).all(|y| y == z || used[y] || span[y].0 >= span[z].1);
            if !fits {
                continue;
            }
            used[z] = true;
            self.pos[row[z]] = slot;
            self.place(i, slot + 1, reach.max(span[z].1), span, used, emit);
            used[z] = false;
        }
    }
}
