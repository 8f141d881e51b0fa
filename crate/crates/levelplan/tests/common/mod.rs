#![allow(dead_code)]

use std::collections::BTreeSet;

use levelplan::decomposition::{DecompositionTree, NodeId};
use levelplan::embedding::{canonical_form, is_level_planar_embedding, trace_faces, RotationSystem};
use levelplan::generate::{exhaustive_instances, random_lp_instance};
use levelplan::levelgraph::{LevelGraph, VertexId};
use levelplan::lptree::{
    compute_heights, compute_spaces, contract_r_s, label_arcs, split_pass, ArcLabel, BuildStats,
};
use levelplan::oracle::brute_force_embeddings;
use levelplan::solvers::{ClgInstance, PegInstance, SefeInstance};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random LP-ready instances with 3 to `max_n` vertices, some with raised demands.
pub fn random_instances(seed: u64, count: usize, max_n: usize) -> Vec<LevelGraph> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            let n = r.gen_range(3..=max_n);
            let k = r.gen_range(3..=6);
            let extra = r.gen_range(0..8);
            random_lp_instance(&mut r, n, k, extra, 0.4)
        })
        .collect()
}

/// The exhaustive corpus (at most 7 vertices and 5 levels) followed by
/// `random` random instances with at most 10 vertices.
pub fn corpus(random: usize) -> Vec<LevelGraph> {
    let mut c = exhaustive_instances(7, 5);
    c.extend(random_instances(0x5eed, random, 10));
    c
}

pub fn oracle_keys(g: &LevelGraph) -> BTreeSet<String> {
    brute_force_embeddings(g).unwrap().keys().cloned().collect()
}

pub fn keys<'a>(g: &LevelGraph, es: impl IntoIterator<Item = &'a RotationSystem>) -> BTreeSet<String> {
    es.into_iter().map(|e| canonical_form(g, e)).collect()
}

pub fn is_planar(g: &LevelGraph, e: &RotationSystem) -> bool {
    match trace_faces(g, e) {
        Ok(f) => g.n() as i64 - g.m() as i64 + f.len() as i64 == 2,
        Err(_) => false,
    }
}

/// Every planar rotation system of a biconnected graph, from its SPQR-tree.
pub fn planar_embeddings(g: &LevelGraph) -> Vec<RotationSystem> {
    let mut t = DecompositionTree::build(g).unwrap();
    if !t.embed_planar() {
        return Vec::new();
    }
    t.all_embeddings(g).collect()
}

/// Every rotation system of `g` that passes the Euler check, by trying all
/// cyclic orders at every vertex.
pub fn planar_rotations_brute(g: &LevelGraph) -> Vec<RotationSystem> {
    let mut lists: Vec<Vec<Vec<usize>>> = Vec::new();
    for v in 0..g.n() {
        let inc = g.incident(v).to_vec();
        let mut rest = inc[1..].to_vec();
        rest.sort();
        let mut opts = Vec::new();
        loop {
            let mut l = vec![inc[0]];
            l.extend(rest.iter().copied());
            opts.push(l);
            if !next_permutation(&mut rest) {
                break;
            }
        }
        lists.push(opts);
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; g.n()];
    loop {
        let rot = RotationSystem::from_lists((0..g.n()).map(|v| lists[v][idx[v]].clone()).collect());
        if is_planar(g, &rot) {
            out.push(rot);
        }
        let mut k = 0;
        while k < g.n() {
            idx[k] += 1;
            if idx[k] < lists[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == g.n() {
            return out;
        }
    }
}

pub fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
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

/// The decomposition tree right before the rigid arcs are contracted, with
/// its heights, spaces and arc labels.
pub struct ArcPass {
    pub tree: DecompositionTree,
    pub heights: Vec<u32>,
    pub spaces: Vec<u32>,
    pub labels: Vec<ArcLabel>,
    pub stats: BuildStats,
}

pub fn arc_pass(g: &LevelGraph, gamma: &RotationSystem) -> ArcPass {
    let mut tree = DecompositionTree::build(g).unwrap();
    tree.embed_from(g, gamma);
    let mut stats = BuildStats::default();
    let mut heights = compute_heights(&tree, g);
    split_pass(&mut tree, g, &mut heights, &mut stats).unwrap();
    stats.rs_contractions = contract_r_s(&mut tree);
    let heights = compute_heights(&tree, g);
    let spaces = compute_spaces(&tree, g);
    let labels = label_arcs(&tree, &heights, &spaces).unwrap();
    ArcPass { tree, heights, spaces, labels, stats }
}

/// `e` with the expansion graph of node `x` mirrored: reversed rotations
/// inside, reversed runs of its edges at the two poles.
pub fn reflect_node(g: &LevelGraph, t: &DecompositionTree, e: &RotationSystem, x: NodeId) -> RotationSystem {
    let mut inside = vec![false; g.m()];
    for f in t.pertinent_edges(x) {
        inside[f] = true;
    }
    let (u, v) = t.node(x).poles;
    let mut rot = e.rotations().to_vec();
    for w in 0..g.n() {
        let r = &mut rot[w];
        if !r.iter().any(|&f| inside[f]) {
            continue;
        }
        if w != u && w != v {
            r.reverse();
            continue;
        }
        // rotate so the run of inside edges starts at 0, then reverse it
        let k = r.len();
        let Some(start) = (0..k).find(|&i| inside[r[i]] && !inside[r[(i + k - 1) % k]]) else {
            r.reverse();
            continue;
        };
        r.rotate_left(start);
        let len = r.iter().take_while(|&&f| inside[f]).count();
        r[..len].reverse();
    }
    RotationSystem::from_lists(rot)
}

pub fn level_planar(g: &LevelGraph, e: &RotationSystem) -> bool {
    is_level_planar_embedding(g, e).unwrap()
}

/// Index of every vertex within its level, as drawn.
pub fn positions(n: usize, levels: &[Vec<VertexId>]) -> Vec<usize> {
    let mut pos = vec![usize::MAX; n];
    for row in levels {
        for (i, &v) in row.iter().enumerate() {
            if v < n {
                pos[v] = i;
            }
        }
    }
    pos
}

/// Random partially embedded instance: a random edge subset, with either
/// the rotations of some level-planar embedding or shuffled ones.
pub fn random_peg(r: &mut ChaCha8Rng, g: &LevelGraph) -> PegInstance {
    let h: Vec<usize> = (0..g.m()).filter(|_| r.gen_bool(0.6)).collect();
    let set = brute_force_embeddings(g).unwrap();
    if r.gen_bool(0.5) && set.count() > 0 {
        let es: Vec<_> = set.embeddings.values().collect();
        return PegInstance::from_embedding(g.clone(), h, es.choose(r).unwrap()).unwrap();
    }
    let mut keep = vec![false; g.m()];
    h.iter().for_each(|&e| keep[e] = true);
    let mut rot: Vec<Vec<usize>> =
        (0..g.n()).map(|v| g.incident(v).iter().copied().filter(|&e| keep[e]).collect()).collect();
    rot.iter_mut().for_each(|l| l.shuffle(r));
    PegInstance::new(g.clone(), h, rot).unwrap()
}

/// Up to `max` random same-level pairs.
pub fn random_clg(r: &mut ChaCha8Rng, g: &LevelGraph, max: usize) -> ClgInstance {
    let mut cons = Vec::new();
    for _ in 0..r.gen_range(0..=max) {
        let u = r.gen_range(0..g.n());
        let same: Vec<usize> = (0..g.n()).filter(|&v| v != u && g.level(v) == g.level(u)).collect();
        if let Some(&v) = same.choose(r) {
            cons.push((u, v));
        }
    }
    ClgInstance::new(g.clone(), cons).unwrap()
}

/// Up to `max` new upward edges split between the two sides.
pub fn random_sefe(r: &mut ChaCha8Rng, g: &LevelGraph, max: usize) -> SefeInstance {
    let mut free: Vec<(usize, usize)> = (0..g.n())
        .flat_map(|a| (0..g.n()).map(move |b| (a, b)))
        .filter(|&(a, b)| g.level(a) < g.level(b) && g.edge_between(a, b).is_none())
        .collect();
    free.shuffle(r);
    let k = r.gen_range(0..=max.min(free.len()));
    let split = r.gen_range(0..=k);
    SefeInstance::new(g.clone(), free[..split].to_vec(), free[split..k].to_vec()).unwrap()
}
