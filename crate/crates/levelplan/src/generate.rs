//! Instance generators for tests, examples and benchmarks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::embedding::RotationSystem;
use crate::levelgraph::{validate, LevelGraph, Vertex, VertexId};

fn vertex(id: String, level: u32) -> Vertex {
    Vertex { id, level, demand: level }
}

/// Random LP-tree input: source `s` on level 1, unique apex `t` on level `k`,
/// edge `(s, t)`, `n - 2` inner vertices on levels `2..k`, biconnected and
/// simple. Each inner vertex below level `k - 1` gets a raised demand with
/// probability `demand_prob`. Not necessarily level planar.
pub fn random_lp_instance(rng: &mut impl Rng, n: usize, k: u32, extra: usize, demand_prob: f64) -> LevelGraph {
    assert!(n >= 3 && k >= 3);
    loop {
        let mut levels = vec![1, k];
        for _ in 2..n {
            levels.push(rng.gen_range(2..k));
        }
        let mut edges: Vec<(VertexId, VertexId)> = vec![(0, 1)];
        let mut has = std::collections::HashSet::from([(0usize, 1usize)]);
        for v in 2..n {
            let lower: Vec<VertexId> = (0..n).filter(|&u| u != 1 && levels[u] < levels[v]).collect();
            let u = *lower.choose(rng).unwrap();
            edges.push((u, v));
            has.insert((u, v));
        }
        for _ in 0..extra {
            let a = rng.gen_range(0..n);
            let b = rng.gen_range(0..n);
            if levels[a] < levels[b] && has.insert((a, b)) {
                edges.push((a, b));
            }
        }
        // every vertex but t needs a way up
        for v in 2..n {
            if !edges.iter().any(|&(a, _)| a == v) {
                let upper: Vec<VertexId> = (1..n).filter(|&w| levels[w] > levels[v]).collect();
                let w = *upper.choose(rng).unwrap();
                has.insert((v, w));
                edges.push((v, w));
            }
        }
        let g = loop {
            let vs = (0..n).map(|v| vertex(name(v), levels[v])).collect();
            let g = LevelGraph::new(vs, edges.clone()).unwrap();
            if validate(&g).biconnected {
                break Some(g);
            }
            let free: Vec<(VertexId, VertexId)> = (0..n)
                .flat_map(|a| (0..n).map(move |b| (a, b)))
                .filter(|&(a, b)| levels[a] < levels[b] && !has.contains(&(a, b)))
                .collect();
            let Some(&(a, b)) = free.choose(rng) else { break None };
            has.insert((a, b));
            edges.push((a, b));
        };
        let Some(g) = g else { continue };
        let mut vs = g.vertices().to_vec();
        for v in vs.iter_mut().skip(2) {
            if v.level + 1 < k && rng.gen_bool(demand_prob) {
                v.demand = rng.gen_range(v.level + 1..k);
            }
        }
        return LevelGraph::new(vs, g.edges().to_vec()).unwrap();
    }
}

fn name(v: usize) -> String {
    match v {
        0 => "s".into(),
        1 => "t".into(),
        _ => format!("v{}", v - 1),
    }
}

/// Large level-planar instance with a known level-planar embedding, for
/// benchmarks: about `n` vertices in layers of random width, consecutive
/// layers joined by a random non-crossing staircase, a source below the
/// first layer, a sink above the last one and the edge `(s, t)` on the left.
pub fn layered_instance(rng: &mut impl Rng, n: usize) -> (LevelGraph, RotationSystem) {
    let n = n.max(4);
    let mut layers: Vec<Vec<VertexId>> = Vec::new();
    let mut vs = vec![vertex("s".into(), 1), vertex("t".into(), 0)];
    let mut left = n - 2;
    while left > 0 {
        let w = rng.gen_range(2..=40).min(left);
        let level = layers.len() as u32 + 2;
        let row: Vec<VertexId> = (0..w)
            .map(|i| {
                vs.push(vertex(format!("v{}_{}", level, i), level));
                vs.len() - 1
            })
            .collect();
        layers.push(row);
        left -= w;
    }
    let top = layers.len() as u32 + 2;
    vs[1].level = top;
    vs[1].demand = top;
    let mut pos = vec![0usize; vs.len()];
    for row in &layers {
        for (i, &v) in row.iter().enumerate() {
            pos[v] = i + 1;
        }
    }
    let mut edges = vec![(0, 1)];
    edges.extend(layers[0].iter().map(|&v| (0, v)));
    for pair in layers.windows(2) {
        let (a, b) = (&pair[0], &pair[1]);
        // monotone walk from (0, 0) to (|a| - 1, |b| - 1)
        let (mut i, mut j) = (0, 0);
        edges.push((a[0], b[0]));
        while i + 1 < a.len() || j + 1 < b.len() {
            if j + 1 == b.len() || (i + 1 < a.len() && rng.gen_bool(0.5)) {
                i += 1;
            } else {
                j += 1;
            }
            edges.push((a[i], b[j]));
        }
    }
    edges.extend(layers.last().unwrap().iter().map(|&v| (v, 1)));
    let g = LevelGraph::new(vs, edges).unwrap();
    // incoming edges left to right, then outgoing ones right to left; (s, t) is leftmost
    let key = |v: VertexId| if v == 0 || v == 1 { 0 } else { pos[v] };
    let rot = (0..g.n())
        .map(|v| {
            let mut ins: Vec<usize> = g.in_edges(v).collect();
            let mut outs: Vec<usize> = g.out_edges(v).collect();
            ins.sort_by_key(|&e| key(g.edge(e).0));
            outs.sort_by_key(|&e| std::cmp::Reverse(key(g.edge(e).1)));
            ins.into_iter().chain(outs).collect()
        })
        .collect();
    (g, RotationSystem::from_lists(rot))
}

/// Every biconnected single-source level graph with a unique apex `t`, an
/// edge `(s, t)`, at most `max_n` vertices and at most `max_levels` levels,
/// one per isomorphism class. Levels are consecutive and all occupied;
/// demands equal levels. Ordered by vertex count, then level profile, then
/// edge set.
pub fn exhaustive_instances(max_n: usize, max_levels: u32) -> Vec<LevelGraph> {
    let mut out = Vec::new();
    for n in 3..=max_n {
        for k in 3..=max_levels {
            let inner = n - 2;
            let mut profile = Vec::new();
            compositions(inner, (k - 2) as usize, &mut profile, &mut |sizes| {
                exhaustive_for_profile(sizes, &mut out);
            });
        }
    }
    out
}

/// Calls `f` with every way of writing `total` as `parts` positive summands.
fn compositions(total: usize, parts: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if parts == 0 {
        if total == 0 {
            f(cur);
        }
        return;
    }
    for x in 1..=total.saturating_sub(parts - 1) {
        cur.push(x);
        compositions(total - x, parts - 1, cur, f);
        cur.pop();
    }
}

fn exhaustive_for_profile(sizes: &[usize], out: &mut Vec<LevelGraph>) {
    let k = sizes.len() as u32 + 2;
    let mut levels = vec![1, k];
    for (i, &c) in sizes.iter().enumerate() {
        levels.extend(std::iter::repeat(i as u32 + 2).take(c));
    }
    let n = levels.len();
    let cand: Vec<(VertexId, VertexId)> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| levels[a] < levels[b] && (a, b) != (0, 1))
        .collect();
    let mut index = vec![vec![usize::MAX; n]; n];
    for (i, &(a, b)) in cand.iter().enumerate() {
        index[a][b] = i;
    }
    // relabelings of the inner vertices that keep every level in place
    let mut perms: Vec<Vec<VertexId>> = vec![(0..n).collect()];
    let mut start = 2;
    for &c in sizes {
        let mut next = Vec::new();
        let mut block: Vec<VertexId> = (start..start + c).collect();
        loop {
            for p in &perms {
                let mut q = p.clone();
                for (j, &v) in block.iter().enumerate() {
                    q[start + j] = v;
                }
                next.push(q);
            }
            if !crate::decomposition::next_permutation(&mut block) {
                break;
            }
        }
        perms = next;
        start += c;
    }
    let mapped: Vec<Vec<usize>> =
        perms.iter().map(|p| cand.iter().map(|&(a, b)| index[p[a]][p[b]]).collect()).collect();
    for mask in 0u64..1 << cand.len() {
        let edges: Vec<(VertexId, VertexId)> =
            std::iter::once((0, 1)).chain((0..cand.len()).filter(|&i| mask >> i & 1 == 1).map(|i| cand[i])).collect();
        if !(2..n).all(|v| edges.iter().any(|&(_, b)| b == v)) || !biconnected(n, &edges) {
            continue;
        }
        let canonical = mapped
            .iter()
            .map(|m| (0..cand.len()).filter(|&i| mask >> i & 1 == 1).fold(0u64, |acc, i| acc | 1 << m[i]))
            .min()
            .unwrap();
        if canonical != mask {
            continue;
        }
        let vs = (0..n).map(|v| vertex(name(v), levels[v])).collect();
        out.push(LevelGraph::new(vs, edges).unwrap());
    }
}

fn biconnected(n: usize, edges: &[(VertexId, VertexId)]) -> bool {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    (0..n).all(|cut| {
        let root = if cut == 0 { 1 } else { 0 };
        let mut seen = vec![false; n];
        seen[cut] = true;
        seen[root] = true;
        let mut stack = vec![root];
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n - 1
    })
}
