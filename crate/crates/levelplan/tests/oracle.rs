mod common;

use common::*;
use levelplan::embedding::is_level_planar_embedding;
use levelplan::fixtures;
use levelplan::levelgraph::LevelGraph;
use levelplan::oracle::{brute_force_embeddings, brute_force_embeddings_guarded, for_each_drawing, OracleError};

#[test]
fn fixture_counts() {
    for (g, n) in [(fixtures::d1(), 2), (fixtures::p1(), 4), (fixtures::r2(), 2), (fixtures::k4_levels(), 2)] {
        assert_eq!(brute_force_embeddings(&g).unwrap().count(), n);
    }
}

#[test]
fn triangle_has_one_embedding() {
    let g = LevelGraph::from_ids(&[("s", 1), ("a", 2), ("t", 3)], &[("s", "a"), ("a", "t"), ("s", "t")]).unwrap();
    assert_eq!(brute_force_embeddings(&g).unwrap().count(), 1);
}

#[test]
fn guard_refuses_large_graphs() {
    let g = fixtures::p1();
    assert_eq!(brute_force_embeddings_guarded(&g, 5).err(), Some(OracleError::Guard { n: 6, guard: 5 }));
    assert!(brute_force_embeddings_guarded(&g, 6).is_ok());
}

#[test]
fn drawing_walk_stops_when_asked() {
    let mut seen = 0;
    for_each_drawing(&fixtures::p1(), |_, _| {
        seen += 1;
        false
    });
    assert_eq!(seen, 1);
}

#[test]
fn demands_shrink_the_set() {
    // three children between s and v; a child whose demand is raised above
    // v must sit on one of the two outer sides
    let base = LevelGraph::from_ids(
        &[("s", 1), ("a", 2), ("b", 2), ("c", 2), ("v", 3), ("t", 5)],
        &[("s", "a"), ("s", "b"), ("s", "c"), ("a", "v"), ("b", "v"), ("c", "v"), ("v", "t"), ("s", "t")],
    )
    .unwrap();
    let free = brute_force_embeddings(&base).unwrap().count();
    let two = brute_force_embeddings(&base.with_demands(&[("a", 4), ("b", 4)]).unwrap()).unwrap().count();
    let three = brute_force_embeddings(&base.with_demands(&[("a", 4), ("b", 4), ("c", 4)]).unwrap()).unwrap().count();
    assert_eq!(free, 6);
    assert_eq!(two, 2);
    assert_eq!(three, 0);
}

#[test]
fn oracle_agrees_with_filtering_planar_rotations() {
    // independent route: all planar rotation systems, kept when the face test accepts
    let with_demand = fixtures::p1().with_demands(&[("a", 4)]).unwrap();
    for g in [fixtures::d1(), fixtures::p1(), fixtures::r2(), fixtures::k4_levels(), with_demand] {
        let kept: Vec<_> =
            planar_rotations_brute(&g).into_iter().filter(|e| is_level_planar_embedding(&g, e).unwrap()).collect();
        assert_eq!(keys(&g, kept.iter()), oracle_keys(&g));
    }
}
