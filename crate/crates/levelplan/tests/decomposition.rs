mod common;

use std::collections::BTreeMap;

use common::*;
use levelplan::decomposition::{DecompositionError, DecompositionTree, Method, NodeKind, SkelKind};
use levelplan::fixtures;
use levelplan::levelgraph::{validate, LevelGraph, Vertex};
use proptest::prelude::*;
use rand::Rng;

/// Random simple biconnected graph, one vertex per level, edges pointing up.
fn random_biconnected(seed: u64, max_n: usize) -> Option<LevelGraph> {
    let mut r = rng(seed);
    let n = r.gen_range(3..=max_n);
    let p = r.gen_range(0.3..0.9);
    let vs = (0..n).map(|i| Vertex { id: format!("v{i}"), level: i as u32 + 1, demand: i as u32 + 1 }).collect();
    let mut es = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if r.gen_bool(p) {
                es.push((a, b));
            }
        }
    }
    let g = LevelGraph::new(vs, es).ok()?;
    let d = validate(&g);
    (d.biconnected && d.simple && g.m() > 0).then_some(g)
}

fn kinds(t: &DecompositionTree) -> BTreeMap<NodeKind, usize> {
    t.kind_counts()
}

#[test]
fn d1_tree_shape() {
    let g = fixtures::d1();
    let t = DecompositionTree::build(&g).unwrap();
    assert_eq!(kinds(&t), BTreeMap::from([(NodeKind::P, 1), (NodeKind::Q, 5), (NodeKind::S, 2)]));
    let st = g.edge_by_ids("s", "t").unwrap();
    assert_eq!(t.sedge(t.real_sedge(st)).node, t.root());
    assert_eq!(t.kind(t.root()), NodeKind::Q);
    let p = t.children(t.root())[0];
    assert_eq!(t.kind(p), NodeKind::P);
    assert_eq!(t.children(p).len(), 2);
    t.check(&g).unwrap();
}

#[test]
fn r2_tree_has_two_adjacent_r_nodes() {
    let g = fixtures::r2();
    let t = DecompositionTree::build(&g).unwrap();
    assert_eq!(kinds(&t), BTreeMap::from([(NodeKind::Q, 10), (NodeKind::R, 2)]));
    let outer = t.children(t.root())[0];
    let inner: Vec<_> = t.children(outer).into_iter().filter(|&x| t.kind(x) == NodeKind::R).collect();
    assert_eq!(inner.len(), 1);
    let names: Vec<&str> = t.skeleton_vertices(inner[0]).into_iter().map(|v| g.id(v)).collect();
    assert_eq!(names, ["p", "q", "y", "z"]);
    let (u, v) = t.node(inner[0]).poles;
    assert_eq!((g.id(u), g.id(v)), ("p", "q"));
}

#[test]
fn p1_tree_shape() {
    let g = fixtures::p1();
    let t = DecompositionTree::build(&g).unwrap();
    let c = kinds(&t);
    assert_eq!(c[&NodeKind::Q], g.m());
    // bonds at {s, v} and at {b, v}
    assert_eq!(c[&NodeKind::P], 2);
    let mut poles: Vec<(&str, &str)> = t
        .node_ids()
        .filter(|&x| t.kind(x) == NodeKind::P)
        .map(|x| (g.id(t.node(x).poles.0), g.id(t.node(x).poles.1)))
        .collect();
    poles.sort();
    assert_eq!(poles, [("b", "v"), ("s", "v")]);
    t.check(&g).unwrap();
}

#[test]
fn small_inputs_are_rejected() {
    let g = LevelGraph::from_ids(&[("s", 1), ("t", 2)], &[("s", "t")]).unwrap();
    assert_eq!(DecompositionTree::build(&g).err(), Some(DecompositionError::NotBiconnected));
    let path = LevelGraph::from_ids(&[("s", 1), ("a", 2), ("t", 3)], &[("s", "a"), ("a", "t")]).unwrap();
    assert_eq!(DecompositionTree::build(&path).err(), Some(DecompositionError::NotBiconnected));
    let d1 = fixtures::d1();
    assert_eq!(DecompositionTree::build_rooted(&d1, 99, Method::PathSearch).err(), Some(DecompositionError::NoRootEdge));
}

#[test]
fn expansion_edges_partition_the_graph() {
    for g in [fixtures::d1(), fixtures::p1(), fixtures::r2(), fixtures::k4_levels()] {
        let t = DecompositionTree::build(&g).unwrap();
        for x in t.node_ids() {
            let kids = t.child_edges(x);
            if kids.is_empty() {
                continue;
            }
            let mut union: Vec<usize> = Vec::new();
            for (e, c) in kids {
                let es = t.expansion_edges(e);
                assert_eq!(es, t.pertinent_edges(c));
                let h = t.expansion_graph(&g, e);
                assert_eq!(h.m(), es.len());
                union.extend(es);
            }
            for e in t.skeleton(x) {
                if let SkelKind::Real(r) = t.sedge(e).kind {
                    union.push(r);
                }
            }
            union.sort_unstable();
            assert_eq!(union, t.pertinent_edges(x), "node {x}");
        }
    }
}

#[test]
fn contracting_every_arc_gives_back_the_graph() {
    for g in [fixtures::p1(), fixtures::r2()] {
        let mut t = DecompositionTree::build(&g).unwrap();
        assert!(t.embed_planar());
        loop {
            let Some(x) = t.node_ids().find(|&x| t.parent(x).is_some()) else { break };
            t.contract(x);
        }
        assert_eq!(t.node_count(), 1);
        let reals = t.skeleton(t.root()).into_iter().filter(|&e| matches!(t.sedge(e).kind, SkelKind::Real(_))).count();
        assert_eq!(reals, g.m());
        t.check(&g).unwrap();
    }
}

#[test]
fn realized_embeddings_match_brute_force_on_fixtures() {
    for g in [fixtures::d1(), fixtures::p1(), fixtures::r2(), fixtures::k4_levels()] {
        let from_tree = planar_embeddings(&g);
        let brute = planar_rotations_brute(&g);
        assert_eq!(from_tree.len(), brute.len());
        assert_eq!(keys(&g, from_tree.iter()), keys(&g, brute.iter()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn path_search_matches_the_reference_split(seed in any::<u64>()) {
        let Some(g) = random_biconnected(seed, 10) else { return Ok(()) };
        prop_assume!(g.n() >= 3);
        for root in [0, g.m() - 1] {
            let fast = DecompositionTree::build_rooted(&g, root, Method::PathSearch).unwrap();
            let slow = DecompositionTree::build_rooted(&g, root, Method::Reference).unwrap();
            prop_assert!(fast.check(&g).is_ok(), "{:?}", fast.check(&g));
            prop_assert_eq!(fast.signature(), slow.signature());
        }
    }

    #[test]
    fn level_instances_match_the_reference_split(seed in any::<u64>()) {
        let g = random_instances(seed, 1, 12).pop().unwrap();
        let fast = DecompositionTree::build(&g).unwrap();
        let root = g.st().unwrap().2;
        let slow = DecompositionTree::build_rooted(&g, root, Method::Reference).unwrap();
        prop_assert!(fast.check(&g).is_ok());
        prop_assert_eq!(fast.signature(), slow.signature());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn realized_embeddings_match_brute_force(seed in any::<u64>()) {
        let Some(g) = random_biconnected(seed, 6) else { return Ok(()) };
        prop_assume!(g.n() >= 3 && g.m() <= 10);
        let from_tree = planar_embeddings(&g);
        let brute = planar_rotations_brute(&g);
        prop_assert_eq!(from_tree.len(), brute.len());
        prop_assert_eq!(keys(&g, from_tree.iter()), keys(&g, brute.iter()));
    }
}
