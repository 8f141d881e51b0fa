mod common;

use levelplan::embedding::RotationSystem;
use levelplan::fixtures;
use levelplan::levelgraph::{add_super_sink, properize, strip_super_sink, validate, GraphError, LevelGraph};
use levelplan::lptree::build_lp_tree;
use proptest::prelude::*;

#[test]
fn d1_passes_every_flag() {
    let d = validate(&fixtures::d1());
    assert!(d.single_source && d.biconnected && d.unique_apex && d.has_st_edge && d.simple && d.demands_bounded);
    assert!(d.lp_ready());
    assert!(!d.proper);
    assert_eq!(d.long_edges, vec![("s".to_string(), "t".to_string())]);
}

#[test]
fn single_vertex_is_single_source_but_not_biconnected() {
    let g = LevelGraph::from_ids(&[("v", 1)], &[]).unwrap();
    let d = validate(&g);
    assert!(d.single_source);
    assert!(!d.biconnected);
}

#[test]
fn two_isolated_vertices_are_two_sources() {
    let g = LevelGraph::from_ids(&[("u", 1), ("v", 1)], &[]).unwrap();
    let d = validate(&g);
    assert!(!d.single_source);
    assert_eq!(d.sources, vec!["u", "v"]);
}

#[test]
fn downward_and_flat_edges_are_rejected() {
    assert!(LevelGraph::from_ids(&[("a", 2), ("b", 1)], &[("a", "b")]).is_err());
    assert!(LevelGraph::from_ids(&[("a", 1), ("b", 1)], &[("a", "b")]).is_err());
    assert!(LevelGraph::from_ids(&[("a", 1)], &[("a", "x")]).is_err());
}

#[test]
fn demand_below_level_is_rejected() {
    let g = LevelGraph::from_ids(&[("a", 1), ("b", 3)], &[("a", "b")]).unwrap();
    assert!(g.with_demands(&[("b", 2)]).is_err());
}

#[test]
fn parallel_edges_fail_simplicity() {
    let g = LevelGraph::from_ids(&[("s", 1), ("t", 2)], &[("s", "t"), ("s", "t")]).unwrap();
    let d = validate(&g);
    assert!(!d.simple);
    assert_eq!(d.parallel_edges, vec![("s".to_string(), "t".to_string())]);
}

#[test]
fn cut_vertex_is_reported() {
    let g = LevelGraph::from_ids(&[("s", 1), ("a", 2), ("t", 3)], &[("s", "a"), ("a", "t")]).unwrap();
    let d = validate(&g);
    assert!(!d.biconnected);
    assert_eq!(d.cut_vertices, vec!["a"]);
}

#[test]
fn json_round_trip_and_default_demands() {
    let text = r#"{"vertices":[{"id":"s","level":1},{"id":"a","level":2,"demand":3},{"id":"t","level":4}],
                   "edges":[["s","a"],["a","t"],["s","t"]]}"#;
    let g = LevelGraph::from_json(text).unwrap();
    assert_eq!(g.demand(g.vertex_index("s").unwrap()), 1);
    assert_eq!(g.demand(g.vertex_index("a").unwrap()), 3);
    let again = LevelGraph::from_json(&g.to_json_value().to_string()).unwrap();
    assert_eq!(again.to_json_value(), g.to_json_value());
    assert!(LevelGraph::from_json(r#"{"vertices":[],"edges":[],"extra":1}"#).is_err());
}

#[test]
fn super_sink_on_a_path() {
    let g = LevelGraph::from_ids(&[("s", 1), ("a", 2)], &[("s", "a")]).unwrap();
    let h = add_super_sink(&g).unwrap();
    let t = h.super_sink().unwrap();
    assert_eq!(h.level(t), 3);
    assert_eq!(h.edges().len(), 3);
    assert!(h.edge_by_ids("a", "t").is_some());
    assert!(h.edge_by_ids("s", "t").is_some());
    // the path plus super-sink is a triangle: one embedding, and stripping gives the path
    let lp = build_lp_tree(&h).unwrap();
    let es: Vec<RotationSystem> = lp.enumerate().collect();
    assert_eq!(es.len(), 1);
    let back = strip_super_sink(&h, &es[0]).unwrap();
    assert_eq!(back.rotations(), &[vec![0], vec![0]]);
}

#[test]
fn super_sink_on_d1_adds_a_new_apex() {
    let h = add_super_sink(&fixtures::d1()).unwrap();
    let t2 = h.super_sink().unwrap();
    assert_eq!(h.id(t2), "t'");
    assert_eq!(h.level(t2), 4);
    assert!(h.edge_by_ids("t", "t'").is_some());
    assert!(h.edge_by_ids("s", "t'").is_some());
    // D1 + super-sink: stripping maps onto the two embeddings of D1
    let lp = build_lp_tree(&h).unwrap();
    let d1 = fixtures::d1();
    let keys = common::keys(
        &d1,
        lp.enumerate().map(|e| strip_super_sink(&h, &e).unwrap()).collect::<Vec<_>>().iter(),
    );
    assert_eq!(keys, common::oracle_keys(&d1));
}

#[test]
fn super_sink_sits_above_the_largest_demand() {
    let g = LevelGraph::from_ids(&[("s", 1), ("v", 2)], &[("s", "v")]).unwrap().with_demands(&[("v", 4)]).unwrap();
    let h = add_super_sink(&g).unwrap();
    assert_eq!(h.level(h.super_sink().unwrap()), 5);
}

#[test]
fn super_sink_needs_one_source() {
    let g = LevelGraph::from_ids(&[("u", 1), ("v", 1), ("w", 2)], &[("u", "w"), ("v", "w")]).unwrap();
    assert!(matches!(add_super_sink(&g), Err(GraphError::NotSingleSource(2))));
}

#[test]
fn strip_rejects_unknown_edges() {
    let h = add_super_sink(&fixtures::d1()).unwrap();
    let mut rot: Vec<Vec<usize>> = (0..h.n()).map(|v| h.incident(v).to_vec()).collect();
    rot[0].push(99);
    assert!(strip_super_sink(&h, &RotationSystem::from_lists(rot)).is_err());
}

#[test]
fn properize_subdivides_long_edges() {
    let g = LevelGraph::from_ids(&[("s", 1), ("t", 3)], &[("s", "t")]).unwrap();
    let (p, map) = properize(&g);
    assert_eq!(p.n(), 3);
    assert_eq!(p.level(2), 2);
    assert!(map.is_dummy(2));
    assert_eq!(map.chains[0].len(), 2);

    let (p, map) = properize(&fixtures::r2());
    let st = fixtures::r2().edge_by_ids("s", "t").unwrap();
    assert_eq!(map.chains[st].len(), 5);
    assert!(p.is_proper());
}

#[test]
fn properize_is_identity_on_proper_graphs() {
    let g = LevelGraph::from_ids(&[("s", 1), ("a", 2), ("b", 2), ("t", 3)], &[("s", "a"), ("s", "b"), ("a", "t"), ("b", "t")])
        .unwrap();
    let (p, map) = properize(&g);
    assert_eq!(p.edges(), g.edges());
    assert_eq!(map.origin, vec![0, 1, 2, 3]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn super_sink_makes_unique_apex_with_st_edge(seed in any::<u64>()) {
        let g = common::random_instances(seed, 1, 9).pop().unwrap();
        // drop the apex so the graph has a plain top level again
        let t = g.apex().unwrap();
        let idx = |v: usize| if v > t { v - 1 } else { v };
        let vs = (0..g.n()).filter(|&v| v != t).map(|v| g.vertex(v).clone()).collect();
        let es = g.edges().iter().filter(|&&(a, b)| a != t && b != t).map(|&(a, b)| (idx(a), idx(b))).collect();
        let base = LevelGraph::new(vs, es).unwrap().without_demands();
        prop_assume!(validate(&base).single_source);
        let h = add_super_sink(&base).unwrap();
        let d = validate(&h);
        prop_assert!(d.unique_apex);
        prop_assert!(d.has_st_edge);
    }
}
