//! Triconnected components of a simple biconnected graph by path search
//! (Hopcroft and Tarjan, with the corrections of Gutwenger and Mutzel).
//!
//! The result lists split components after merging adjacent bonds and
//! adjacent polygons. Edge ids below the input edge count are real edges;
//! higher ids are virtual edges, each shared by exactly two components.

const NONE: usize = usize::MAX;
const EOS: (i64, i64, i64) = (-1, -1, -1);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CompKind {
    Bond,
    Polygon,
    Triconnected,
}

#[derive(Clone, Debug)]
pub struct Components {
    /// Endpoints of every edge, real and virtual.
    pub ends: Vec<(usize, usize)>,
    pub comps: Vec<(CompKind, Vec<usize>)>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Ty {
    Unseen,
    Tree,
    Frond,
}

struct Tric {
    src: Vec<usize>,
    tgt: Vec<usize>,
    ty: Vec<Ty>,
    number: Vec<usize>,
    lowpt1: Vec<usize>,
    lowpt2: Vec<usize>,
    nd: Vec<usize>,
    father: Vec<usize>,
    degree: Vec<usize>,
    tree_arc: Vec<usize>,
    newnum: Vec<usize>,
    nodeat: Vec<usize>,
    // palm-tree adjacency: outgoing arcs of each vertex in path-search order
    ahead: Vec<usize>,
    atail: Vec<usize>,
    anext: Vec<usize>,
    aprev: Vec<usize>,
    in_a: Vec<bool>,
    // high-point lists
    hval: Vec<usize>,
    hnext: Vec<usize>,
    hprev: Vec<usize>,
    hown: Vec<usize>,
    hhead: Vec<usize>,
    htail: Vec<usize>,
    in_high: Vec<usize>,
    start: Vec<bool>,
    estack: Vec<usize>,
    tstack: Vec<(i64, i64, i64)>,
    comps: Vec<(CompKind, Vec<usize>)>,
    num_count: usize,
    new_path: bool,
    root: usize,
}

/// Splits a simple biconnected graph with at least three vertices into its
/// triconnected components.
pub fn triconnected_components(n: usize, edges: &[(usize, usize)]) -> Components {
    let big = n > 2_000;
    let edges = edges.to_vec();
    let run = move || Tric::run(n, &edges);
    if big {
        std::thread::Builder::new()
            .stack_size(64 * 1024 * 1024 + n * 2048)
            .spawn(run)
            .expect("spawn decomposition thread")
            .join()
            .expect("decomposition thread panicked")
    } else {
        run()
    }
}

impl Tric {
    fn run(n: usize, edges: &[(usize, usize)]) -> Components {
        let m = edges.len();
        let mut t = Tric {
            src: edges.iter().map(|e| e.0).collect(),
            tgt: edges.iter().map(|e| e.1).collect(),
            ty: vec![Ty::Unseen; m],
            number: vec![0; n],
            lowpt1: vec![0; n],
            lowpt2: vec![0; n],
            nd: vec![0; n],
            father: vec![NONE; n],
            degree: vec![0; n],
            tree_arc: vec![NONE; n],
            newnum: vec![0; n],
            nodeat: vec![NONE; n + 1],
            ahead: vec![NONE; n],
            atail: vec![NONE; n],
            anext: vec![NONE; m],
            aprev: vec![NONE; m],
            in_a: vec![false; m],
            hval: Vec::new(),
            hnext: Vec::new(),
            hprev: Vec::new(),
            hown: Vec::new(),
            hhead: vec![NONE; n],
            htail: vec![NONE; n],
            in_high: vec![NONE; m],
            start: vec![false; m],
            estack: Vec::new(),
            tstack: vec![EOS],
            comps: Vec::new(),
            num_count: 0,
            new_path: true,
            root: 0,
        };
        let mut inc: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (e, &(u, v)) in edges.iter().enumerate() {
            inc[u].push(e);
            inc[v].push(e);
        }
        t.dfs1(&inc, 0, NONE);
        for e in 0..m {
            let up = t.number[t.tgt[e]] > t.number[t.src[e]];
            if (up && t.ty[e] == Ty::Frond) || (!up && t.ty[e] == Ty::Tree) {
                let (a, b) = (t.src[e], t.tgt[e]);
                t.src[e] = b;
                t.tgt[e] = a;
            }
        }
        t.build_adjacency(n);
        t.num_count = n;
        t.path_finder(0);
        let mut old2new = vec![0; n + 1];
        for v in 0..n {
            old2new[t.number[v]] = t.newnum[v];
        }
        for v in 0..n {
            t.nodeat[t.newnum[v]] = v;
            t.lowpt1[v] = old2new[t.lowpt1[v]];
            t.lowpt2[v] = old2new[t.lowpt2[v]];
        }
        t.path_search(0);
        let mut last = Vec::new();
        while let Some(e) = t.estack.pop() {
            last.push(e);
        }
        if !last.is_empty() {
            let kind = if last.len() == 3 { CompKind::Polygon } else { CompKind::Triconnected };
            t.comps.push((kind, last));
        }
        let ends = t.src.iter().zip(&t.tgt).map(|(&a, &b)| (a, b)).collect();
        assemble(m, ends, t.comps)
    }

    fn dfs1(&mut self, inc: &[Vec<usize>], v: usize, u: usize) {
        self.num_count += 1;
        self.number[v] = self.num_count;
        self.father[v] = u;
        self.degree[v] = inc[v].len();
        self.lowpt1[v] = self.number[v];
        self.lowpt2[v] = self.number[v];
        self.nd[v] = 1;
        for &e in &inc[v] {
            if self.ty[e] != Ty::Unseen {
                continue;
            }
            let w = if self.src[e] == v { self.tgt[e] } else { self.src[e] };
            if self.number[w] == 0 {
                self.ty[e] = Ty::Tree;
                self.tree_arc[w] = e;
                self.dfs1(inc, w, v);
                if self.lowpt1[w] < self.lowpt1[v] {
                    self.lowpt2[v] = self.lowpt1[v].min(self.lowpt2[w]);
                    self.lowpt1[v] = self.lowpt1[w];
                } else if self.lowpt1[w] == self.lowpt1[v] {
                    self.lowpt2[v] = self.lowpt2[v].min(self.lowpt2[w]);
                } else {
                    self.lowpt2[v] = self.lowpt2[v].min(self.lowpt1[w]);
                }
                self.nd[v] += self.nd[w];
            } else {
                self.ty[e] = Ty::Frond;
                if self.number[w] < self.lowpt1[v] {
                    self.lowpt2[v] = self.lowpt1[v];
                    self.lowpt1[v] = self.number[w];
                } else if self.number[w] > self.lowpt1[v] {
                    self.lowpt2[v] = self.lowpt2[v].min(self.number[w]);
                }
            }
        }
    }

    fn build_adjacency(&mut self, n: usize) {
        let m = self.src.len();
        let max = 3 * n + 3;
        let mut bucket: Vec<Vec<usize>> = vec![Vec::new(); max];
        for e in 0..m {
            let w = self.tgt[e];
            let phi = if self.ty[e] == Ty::Frond {
                3 * self.number[w] + 1
            } else if self.lowpt2[w] < self.number[self.src[e]] {
                3 * self.lowpt1[w]
            } else {
                3 * self.lowpt1[w] + 2
            };
            bucket[phi].push(e);
        }
        for b in bucket {
            for e in b {
                let v = self.src[e];
                self.a_push_back(v, e);
            }
        }
    }

    fn path_finder(&mut self, v: usize) {
        self.newnum[v] = self.num_count - self.nd[v] + 1;
        let mut e = self.ahead[v];
        while e != NONE {
            let w = self.tgt[e];
            if self.new_path {
                self.new_path = false;
                self.start[e] = true;
            }
            if self.ty[e] == Ty::Tree {
                self.path_finder(w);
                self.num_count -= 1;
            } else {
                let val = self.newnum[v];
                self.in_high[e] = self.h_push_back(w, val);
                self.new_path = true;
            }
            e = self.anext[e];
        }
    }

    fn new_edge(&mut self, u: usize, v: usize) -> usize {
        self.src.push(u);
        self.tgt.push(v);
        self.ty.push(Ty::Unseen);
        self.anext.push(NONE);
        self.aprev.push(NONE);
        self.in_a.push(false);
        self.in_high.push(NONE);
        self.start.push(false);
        self.src.len() - 1
    }

    fn a_push_back(&mut self, v: usize, e: usize) {
        self.aprev[e] = self.atail[v];
        self.anext[e] = NONE;
        if self.atail[v] == NONE {
            self.ahead[v] = e;
        } else {
            let t = self.atail[v];
            self.anext[t] = e;
        }
        self.atail[v] = e;
        self.in_a[e] = true;
    }

    fn a_del(&mut self, e: usize) {
        if !self.in_a[e] {
            return;
        }
        let v = self.src[e];
        let (p, q) = (self.aprev[e], self.anext[e]);
        if p == NONE {
            self.ahead[v] = q;
        } else {
            self.anext[p] = q;
        }
        if q == NONE {
            self.atail[v] = p;
        } else {
            self.aprev[q] = p;
        }
        self.in_a[e] = false;
    }

    /// Puts `new` at the list position of `old` (both have the same source).
    fn a_replace(&mut self, old: usize, new: usize) {
        debug_assert!(self.in_a[old]);
        debug_assert_eq!(self.src[old], self.src[new]);
        let v = self.src[old];
        let (p, q) = (self.aprev[old], self.anext[old]);
        self.aprev[new] = p;
        self.anext[new] = q;
        if p == NONE {
            self.ahead[v] = new;
        } else {
            self.anext[p] = new;
        }
        if q == NONE {
            self.atail[v] = new;
        } else {
            self.aprev[q] = new;
        }
        self.in_a[old] = false;
        self.in_a[new] = true;
    }

    fn first_child_num(&self, w: usize) -> usize {
        let e = self.ahead[w];
        if e == NONE {
            0
        } else {
            self.newnum[self.tgt[e]]
        }
    }

    fn h_new(&mut self, w: usize, val: usize) -> usize {
        self.hval.push(val);
        self.hnext.push(NONE);
        self.hprev.push(NONE);
        self.hown.push(w);
        self.hval.len() - 1
    }

    fn h_push_back(&mut self, w: usize, val: usize) -> usize {
        let h = self.h_new(w, val);
        self.hprev[h] = self.htail[w];
        if self.htail[w] == NONE {
            self.hhead[w] = h;
        } else {
            let t = self.htail[w];
            self.hnext[t] = h;
        }
        self.htail[w] = h;
        h
    }

    fn h_push_front(&mut self, w: usize, val: usize) -> usize {
        let h = self.h_new(w, val);
        self.hnext[h] = self.hhead[w];
        if self.hhead[w] == NONE {
            self.htail[w] = h;
        } else {
            let f = self.hhead[w];
            self.hprev[f] = h;
        }
        self.hhead[w] = h;
        h
    }

    fn del_high(&mut self, e: usize) {
        let h = self.in_high[e];
        if h == NONE {
            return;
        }
        self.in_high[e] = NONE;
        let w = self.hown[h];
        let (p, q) = (self.hprev[h], self.hnext[h]);
        if p == NONE {
            self.hhead[w] = q;
        } else {
            self.hnext[p] = q;
        }
        if q == NONE {
            self.htail[w] = p;
        } else {
            self.hprev[q] = p;
        }
    }

    fn high(&self, v: usize) -> usize {
        let h = self.hhead[v];
        if h == NONE {
            0
        } else {
            self.hval[h]
        }
    }

    fn ta(&self) -> i64 {
        self.tstack.last().unwrap().1
    }

    fn th(&self) -> i64 {
        self.tstack.last().unwrap().0
    }

    fn tb(&self) -> i64 {
        self.tstack.last().unwrap().2
    }

    fn not_eos(&self) -> bool {
        self.ta() != -1
    }

    fn finish_tric_or_poly(&mut self, mut edges: Vec<usize>, virt: usize) {
        edges.push(virt);
        let kind = if edges.len() >= 4 { CompKind::Triconnected } else { CompKind::Polygon };
        self.comps.push((kind, edges));
    }

    fn path_search(&mut self, v: usize) {
        let vnum = self.newnum[v];
        let mut tree_left = 0usize;
        let mut x = self.ahead[v];
        while x != NONE {
            if self.ty[x] == Ty::Tree {
                tree_left += 1;
            }
            x = self.anext[x];
        }
        let mut it = self.ahead[v];
        while it != NONE {
            let next = self.anext[it];
            let e = it;
            let mut it_e;
            let mut w = self.tgt[e];
            let mut wnum = self.newnum[w];
            if self.ty[e] == Ty::Tree {
                tree_left -= 1;
                if self.start[e] {
                    let lw = self.lowpt1[w] as i64;
                    if self.ta() > lw {
                        let mut y = 0;
                        let mut b;
                        loop {
                            y = y.max(self.th());
                            b = self.tb();
                            self.tstack.pop();
                            if self.ta() <= lw {
                                break;
                            }
                        }
                        self.tstack.push((y, lw, b));
                    } else {
                        self.tstack.push(((wnum + self.nd[w] - 1) as i64, lw, vnum as i64));
                    }
                    self.tstack.push(EOS);
                }

                self.path_search(w);
                // the child may have replaced its tree arc in our list
                it_e = self.tree_arc[w];
                self.estack.push(it_e);

                loop {
                    let deg2 = self.degree[w] == 2 && self.first_child_num(w) > wnum;
                    if !(vnum != 1 && (self.ta() == vnum as i64 || deg2)) {
                        break;
                    }
                    let a = self.ta();
                    let b = self.tb();
                    if a == vnum as i64 && self.father[self.nodeat[b as usize]] == self.nodeat[a as usize] {
                        self.tstack.pop();
                        continue;
                    }
                    let mut e_ab = NONE;
                    let xv;
                    let mut e_virt;
                    if deg2 {
                        let e1 = self.estack.pop().unwrap();
                        let e2 = self.estack.pop().unwrap();
                        self.a_del(e2);
                        xv = self.tgt[e2];
                        e_virt = self.new_edge(v, xv);
                        self.degree[xv] -= 1;
                        self.degree[v] -= 1;
                        self.comps.push((CompKind::Polygon, vec![e1, e2, e_virt]));
                        if let Some(&top) = self.estack.last() {
                            if self.src[top] == xv && self.tgt[top] == v {
                                e_ab = self.estack.pop().unwrap();
                                self.a_del(e_ab);
                                self.del_high(e_ab);
                            }
                        }
                    } else {
                        let h = self.th();
                        self.tstack.pop();
                        let mut comp = Vec::new();
                        while let Some(&xy) = self.estack.last() {
                            let (xx, yy) = (self.src[xy], self.tgt[xy]);
                            let (nx, ny) = (self.newnum[xx] as i64, self.newnum[yy] as i64);
                            if !(a <= nx && nx <= h && a <= ny && ny <= h) {
                                break;
                            }
                            self.estack.pop();
                            if (nx == a && ny == b) || (ny == a && nx == b) {
                                e_ab = xy;
                                self.a_del(xy);
                                self.del_high(xy);
                            } else {
                                if it_e != xy {
                                    self.a_del(xy);
                                    self.del_high(xy);
                                }
                                comp.push(xy);
                                self.degree[xx] -= 1;
                                self.degree[yy] -= 1;
                            }
                        }
                        e_virt = self.new_edge(self.nodeat[a as usize], self.nodeat[b as usize]);
                        self.finish_tric_or_poly(comp, e_virt);
                        xv = self.nodeat[b as usize];
                    }
                    if e_ab != NONE {
                        let e2 = self.new_edge(v, xv);
                        self.comps.push((CompKind::Bond, vec![e_ab, e_virt, e2]));
                        e_virt = e2;
                        self.degree[xv] -= 1;
                        self.degree[v] -= 1;
                    }
                    self.estack.push(e_virt);
                    self.a_replace(it_e, e_virt);
                    it_e = e_virt;
                    self.degree[xv] += 1;
                    self.degree[v] += 1;
                    self.father[xv] = v;
                    self.tree_arc[xv] = e_virt;
                    self.ty[e_virt] = Ty::Tree;
                    w = xv;
                    wnum = self.newnum[w];
                }

                let root_ok = self.father[v] != self.root || tree_left >= 1;
                if self.lowpt2[w] >= vnum && self.lowpt1[w] < vnum && root_ok {
                    let mut comp = Vec::new();
                    let lo = wnum;
                    let hi = wnum + self.nd[w];
                    while let Some(&xy) = self.estack.last() {
                        let (xx, yy) = (self.newnum[self.src[xy]], self.newnum[self.tgt[xy]]);
                        if !((lo <= xx && xx < hi) || (lo <= yy && yy < hi)) {
                            break;
                        }
                        self.estack.pop();
                        comp.push(xy);
                        self.del_high(xy);
                        let (s, t) = (self.src[xy], self.tgt[xy]);
                        self.degree[s] -= 1;
                        self.degree[t] -= 1;
                    }
                    let lw = self.nodeat[self.lowpt1[w]];
                    let mut e_virt = self.new_edge(v, lw);
                    self.finish_tric_or_poly(comp, e_virt);
                    if let Some(&top) = self.estack.last() {
                        if self.src[top] == v && self.tgt[top] == lw {
                            let eh = self.estack.pop().unwrap();
                            if it_e != eh {
                                self.a_del(eh);
                            }
                            let e2 = self.new_edge(v, lw);
                            self.in_high[e2] = self.in_high[eh];
                            if self.in_high[e2] != NONE {
                                let h = self.in_high[e2];
                                self.hown[h] = lw;
                            }
                            self.in_high[eh] = NONE;
                            self.comps.push((CompKind::Bond, vec![eh, e_virt, e2]));
                            e_virt = e2;
                            self.degree[v] -= 1;
                            self.degree[lw] -= 1;
                        }
                    }
                    if lw != self.father[v] {
                        self.estack.push(e_virt);
                        self.a_replace(it_e, e_virt);
                        if self.in_high[e_virt] == NONE && self.high(lw) < vnum {
                            self.in_high[e_virt] = self.h_push_front(lw, vnum);
                        }
                        self.degree[v] += 1;
                        self.degree[lw] += 1;
                    } else {
                        self.a_del(it_e);
                        let e3 = self.new_edge(lw, v);
                        let eh = self.tree_arc[v];
                        self.comps.push((CompKind::Bond, vec![e_virt, e3, eh]));
                        self.tree_arc[v] = e3;
                        self.ty[e3] = Ty::Tree;
                        self.a_replace(eh, e3);
                    }
                }

                if self.start[e] {
                    while self.not_eos() {
                        self.tstack.pop();
                    }
                    self.tstack.pop();
                }
                while self.not_eos() && self.tb() != vnum as i64 && (self.high(v) as i64) > self.th() {
                    self.tstack.pop();
                }
            } else {
                let wn = wnum as i64;
                if self.start[e] {
                    if self.ta() > wn {
                        let mut y = 0;
                        let mut b;
                        loop {
                            y = y.max(self.th());
                            b = self.tb();
                            self.tstack.pop();
                            if self.ta() <= wn {
                                break;
                            }
                        }
                        self.tstack.push((y, wn, b));
                    } else {
                        self.tstack.push((vnum as i64, wn, vnum as i64));
                    }
                }
                self.estack.push(e);
            }
            it = next;
        }
    }
}

/// Merges bonds sharing a virtual edge and polygons sharing a virtual edge.
pub(crate) fn assemble(m: usize, ends: Vec<(usize, usize)>, comps: Vec<(CompKind, Vec<usize>)>) -> Components {
    let total = ends.len();
    let mut first = vec![NONE; total];
    let mut second = vec![NONE; total];
    for (i, (_, es)) in comps.iter().enumerate() {
        for &e in es {
            if first[e] == NONE {
                first[e] = i;
            } else {
                second[e] = i;
            }
        }
    }
    let mut parent: Vec<usize> = (0..comps.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut dropped = vec![false; total];
    for e in m..total {
        let (a, b) = (first[e], second[e]);
        if a == NONE || b == NONE {
            continue;
        }
        let ka = comps[a].0;
        if ka == comps[b].0 && ka != CompKind::Triconnected {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[rb] = ra;
            }
            dropped[e] = true;
        }
    }
    let mut slot = vec![NONE; comps.len()];
    let mut out: Vec<(CompKind, Vec<usize>)> = Vec::new();
    for i in 0..comps.len() {
        let r = find(&mut parent, i);
        if slot[r] == NONE {
            slot[r] = out.len();
            out.push((comps[r].0, Vec::new()));
        }
        let k = slot[r];
        out[k].1.extend(comps[i].1.iter().copied().filter(|&e| !dropped[e]));
    }
    out.retain(|(_, es)| !es.is_empty());
    Components { ends, comps: out }
}
