//! Planar embedding of small biconnected graphs by incremental path insertion
//! (Demoucron, Malgrange and Pertuiset). Quadratic; used for skeletons and for
//! graphs without a known embedding.

use std::collections::HashMap;

/// Counter-clockwise rotation (edge indices per vertex) of a planar embedding,
/// or `None` if the graph is not planar. The graph must be simple and
/// biconnected (a single edge is accepted as well).
pub fn planar_rotation(n: usize, edges: &[(usize, usize)]) -> Option<Vec<Vec<usize>>> {
    let mut adj = vec![Vec::new(); n];
    for (i, &(u, v)) in edges.iter().enumerate() {
        adj[u].push((v, i));
        adj[v].push((u, i));
    }
    if edges.len() <= 1 {
        return Some(adj.iter().map(|a| a.iter().map(|&(_, e)| e).collect()).collect());
    }
    let index: HashMap<(usize, usize), usize> =
        edges.iter().enumerate().flat_map(|(i, &(u, v))| [((u, v), i), ((v, u), i)]).collect();

    let cycle = find_cycle(n, &adj)?;
    let mut in_v = vec![false; n];
    let mut in_e = vec![false; edges.len()];
    for i in 0..cycle.len() {
        let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
        in_v[a] = true;
        in_e[index[&(a, b)]] = true;
    }
    let mut rev = cycle.clone();
    rev.reverse();
    let mut faces: Vec<Vec<usize>> = vec![cycle, rev];
    let mut placed = faces[0].len();

    while placed < edges.len() {
        let frags = fragments(n, edges, &adj, &in_v, &in_e);
        let mut best: Option<(usize, Vec<usize>)> = None;
        for (fi, fr) in frags.iter().enumerate() {
            let ok: Vec<usize> = (0..faces.len())
                .filter(|&f| fr.attachments.iter().all(|a| faces[f].contains(a)))
                .collect();
            if ok.is_empty() {
                return None;
            }
            if best.as_ref().map_or(true, |(_, b)| ok.len() < b.len()) {
                best = Some((fi, ok));
            }
        }
        let (fi, ok) = best.expect("an unplaced edge belongs to some fragment");
        let path = fragment_path(&frags[fi], &adj, &in_v);
        let f = ok[0];
        let face = faces[f].clone();
        let a = path[0];
        let b = *path.last().unwrap();
        let k = face.len();
        let i = face.iter().position(|&x| x == a).unwrap();
        let j = face.iter().position(|&x| x == b).unwrap();
        let inner = &path[1..path.len() - 1];
        let mut f1: Vec<usize> = (0..=((j + k - i) % k)).map(|d| face[(i + d) % k]).collect();
        f1.extend(inner.iter().rev());
        let mut f2: Vec<usize> = (0..=((i + k - j) % k)).map(|d| face[(j + d) % k]).collect();
        f2.extend(inner.iter());
        faces[f] = f1;
        faces.push(f2);
        for w in path.windows(2) {
            in_e[index[&(w[0], w[1])]] = true;
            placed += 1;
        }
        for &v in &path {
            in_v[v] = true;
        }
    }

    // corner (u, v, w) on a face means: at v the edge to u follows the edge to w counter-clockwise
    let mut succ: Vec<HashMap<usize, usize>> = vec![HashMap::new(); n];
    for f in &faces {
        let k = f.len();
        for i in 0..k {
            let (u, v, w) = (f[i], f[(i + 1) % k], f[(i + 2) % k]);
            succ[v].insert(index[&(v, w)], index[&(v, u)]);
        }
    }
    let mut rot = Vec::with_capacity(n);
    for v in 0..n {
        let Some(&(_, first)) = adj[v].first() else {
            rot.push(Vec::new());
            continue;
        };
        let mut r = vec![first];
        let mut e = succ[v][&first];
        while e != first {
            r.push(e);
            e = succ[v][&e];
        }
        if r.len() != adj[v].len() {
            return None;
        }
        rot.push(r);
    }
    Some(rot)
}

fn find_cycle(n: usize, adj: &[Vec<(usize, usize)>]) -> Option<Vec<usize>> {
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![usize::MAX; n];
    let root = (0..n).find(|&v| !adj[v].is_empty())?;
    depth[root] = 0;
    let mut stack = vec![(root, usize::MAX, 0usize)];
    while let Some(top) = stack.last_mut() {
        let (v, pe, i) = *top;
        if i == adj[v].len() {
            stack.pop();
            continue;
        }
        top.2 += 1;
        let (w, e) = adj[v][i];
        if e == pe {
            continue;
        }
        if depth[w] == usize::MAX {
            depth[w] = depth[v] + 1;
            parent[w] = v;
            stack.push((w, e, 0));
        } else if depth[w] < depth[v] {
            let mut cyc = vec![v];
            let mut x = v;
            while x != w {
                x = parent[x];
                cyc.push(x);
            }
            return Some(cyc);
        }
    }
    None
}

struct Fragment {
    attachments: Vec<usize>,
    /// Chord endpoints, or the inner vertices of a bridge.
    chord: Option<(usize, usize)>,
    inner: Vec<usize>,
}

fn fragments(
    n: usize,
    edges: &[(usize, usize)],
    adj: &[Vec<(usize, usize)>],
    in_v: &[bool],
    in_e: &[bool],
) -> Vec<Fragment> {
    let mut out = Vec::new();
    for (i, &(u, v)) in edges.iter().enumerate() {
        if !in_e[i] && in_v[u] && in_v[v] {
            out.push(Fragment { attachments: vec![u, v], chord: Some((u, v)), inner: Vec::new() });
        }
    }
    let mut comp = vec![usize::MAX; n];
    for r in 0..n {
        if in_v[r] || comp[r] != usize::MAX || adj[r].is_empty() {
            continue;
        }
        let id = out.len();
        comp[r] = id;
        let mut inner = vec![r];
        let mut att = Vec::new();
        let mut k = 0;
        while k < inner.len() {
            let v = inner[k];
            k += 1;
            for &(w, _) in &adj[v] {
                if in_v[w] {
                    att.push(w);
                } else if comp[w] == usize::MAX {
                    comp[w] = id;
                    inner.push(w);
                }
            }
        }
        att.sort_unstable();
        att.dedup();
        out.push(Fragment { attachments: att, chord: None, inner });
    }
    out
}

fn fragment_path(fr: &Fragment, adj: &[Vec<(usize, usize)>], in_v: &[bool]) -> Vec<usize> {
    if let Some((u, v)) = fr.chord {
        return vec![u, v];
    }
    let a = fr.attachments[0];
    let inside: std::collections::HashSet<usize> = fr.inner.iter().copied().collect();
    let start = adj[a].iter().map(|&(w, _)| w).find(|w| inside.contains(w)).unwrap();
    let mut prev: HashMap<usize, usize> = HashMap::new();
    prev.insert(start, a);
    let mut queue = std::collections::VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for &(w, _) in &adj[v] {
            if in_v[w] {
                if w != a {
                    let mut path = vec![w, v];
                    let mut x = v;
                    while x != start {
                        x = prev[&x];
                        path.push(x);
                    }
                    path.push(a);
                    path.reverse();
                    return path;
                }
            } else if inside.contains(&w) && !prev.contains_key(&w) {
                prev.insert(w, v);
                queue.push_back(w);
            }
        }
    }
    unreachable!("a bridge of a biconnected graph has two attachments")
}
