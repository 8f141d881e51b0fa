//! Slow triconnected-components split used to cross-check the linear one.
//! Repeatedly splits off multiple edges and separation pairs by brute force,
//! then merges bonds and polygons like the fast version.

use super::triconnected::{assemble, CompKind, Components};

/// Same contract as [`super::triconnected::triconnected_components`].
pub fn reference_components(n: usize, edges: &[(usize, usize)]) -> Components {
    let m = edges.len();
    let mut ends: Vec<(usize, usize)> = edges.to_vec();
    let mut comps = Vec::new();
    let mut work = vec![(0..m).collect::<Vec<usize>>()];
    while let Some(es) = work.pop() {
        split(n, &mut ends, es, &mut comps, &mut work);
    }
    assemble(m, ends, comps)
}

fn split(
    n: usize,
    ends: &mut Vec<(usize, usize)>,
    es: Vec<usize>,
    comps: &mut Vec<(CompKind, Vec<usize>)>,
    work: &mut Vec<Vec<usize>>,
) {
    let key = |e: usize, ends: &[(usize, usize)]| {
        let (a, b) = ends[e];
        (a.min(b), a.max(b))
    };
    let mut verts: Vec<usize> = es.iter().flat_map(|&e| [ends[e].0, ends[e].1]).collect();
    verts.sort_unstable();
    verts.dedup();
    if verts.len() == 2 {
        comps.push((CompKind::Bond, es));
        return;
    }
    // multiple edges
    let mut sorted = es.clone();
    sorted.sort_by_key(|&e| key(e, ends));
    for w in sorted.windows(2) {
        if key(w[0], ends) == key(w[1], ends) {
            let k = key(w[0], ends);
            let bundle: Vec<usize> = es.iter().copied().filter(|&e| key(e, ends) == k).collect();
            let rest: Vec<usize> = es.iter().copied().filter(|&e| key(e, ends) != k).collect();
            let v = ends.len();
            ends.push(k);
            let mut b = bundle;
            b.push(v);
            comps.push((CompKind::Bond, b));
            let mut r = rest;
            r.push(v);
            work.push(r);
            return;
        }
    }
    let mut deg = vec![0usize; n];
    for &e in &es {
        deg[ends[e].0] += 1;
        deg[ends[e].1] += 1;
    }
    if verts.iter().all(|&v| deg[v] == 2) {
        comps.push((CompKind::Polygon, es));
        return;
    }
    for (i, &a) in verts.iter().enumerate() {
        for &b in &verts[i + 1..] {
            let classes = separation_classes(n, ends, &es, a, b);
            let proper = classes.len() >= 3 || (classes.len() == 2 && classes.iter().all(|c| c.len() >= 2));
            if !proper {
                continue;
            }
            // split off the largest class that leaves at least two edges behind
            let pick = classes.iter().position(|c| c.len() >= 2 && es.len() - c.len() >= 2).unwrap();
            let part = classes[pick].clone();
            let rest: Vec<usize> = es.iter().copied().filter(|e| !part.contains(e)).collect();
            let v = ends.len();
            ends.push((a, b));
            let mut p = part;
            p.push(v);
            let mut r = rest;
            r.push(v);
            work.push(p);
            work.push(r);
            return;
        }
    }
    comps.push((CompKind::Triconnected, es));
}

fn separation_classes(n: usize, ends: &[(usize, usize)], es: &[usize], a: usize, b: usize) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for &e in es {
        let (u, v) = ends[e];
        if u != a && u != b && v != a && v != b {
            let (x, y) = (find(&mut parent, u), find(&mut parent, v));
            parent[x] = y;
        }
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for &e in es {
        let (u, v) = ends[e];
        let inner = [u, v].into_iter().find(|&x| x != a && x != b);
        match inner {
            None => classes.push(vec![e]),
            Some(x) => {
                let r = find(&mut parent, x);
                if slot[r] == usize::MAX {
                    slot[r] = classes.len();
                    classes.push(Vec::new());
                }
                classes[slot[r]].push(e);
            }
        }
    }
    classes
}
