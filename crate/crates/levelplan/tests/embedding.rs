mod common;

use common::*;
use levelplan::embedding::{
    canonical_form, drawing_to_embedding, embedding_to_drawing, is_level_planar_drawing, is_level_planar_embedding,
    st_augment, trace_faces, DrawingJson, EmbeddingError, LevelDrawing, RotationSystem,
};
use levelplan::fixtures;
use levelplan::levelgraph::{properize, LevelGraph};
use levelplan::lptree::build_lp_tree;
use levelplan::oracle::brute_force_embeddings;
use proptest::prelude::*;

fn drawing(g: &LevelGraph, rows: &[&[&str]]) -> LevelDrawing {
    let (proper, _) = properize(g);
    let raw = DrawingJson { levels: rows.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect() };
    LevelDrawing::from_json(&proper, &raw).unwrap()
}

/// D1 drawn with `a` left of `b`; the edge (s, t) runs through the dummy on the left.
fn d1_ab() -> (LevelGraph, RotationSystem) {
    let g = fixtures::d1();
    let d = drawing(&g, &[&["s"], &["s~t@2", "a", "b"], &["t"]]);
    let e = drawing_to_embedding(&g, &d).unwrap();
    (g, e)
}

fn edge(g: &LevelGraph, u: &str, v: &str) -> usize {
    g.edge_by_ids(u, v).unwrap()
}

#[test]
fn triangle_has_two_faces_of_length_three() {
    let g = LevelGraph::from_ids(&[("s", 1), ("a", 2), ("t", 3)], &[("s", "a"), ("a", "t"), ("s", "t")]).unwrap();
    let f = trace_faces(&g, &RotationSystem::incidence_order(&g)).unwrap();
    assert_eq!(f.len(), 2);
    assert!(f.faces.iter().all(|x| x.darts.len() == 3));
}

#[test]
fn d1_faces_and_outer_apex() {
    let (g, e) = d1_ab();
    let f = trace_faces(&g, &e).unwrap();
    // 4 vertices, 5 edges: Euler leaves 3 faces
    assert_eq!(f.len(), 3);
    let outer = &f.faces[f.outer.unwrap()];
    assert!(outer.is_outer);
    assert_eq!(outer.apex_vertices, vec![g.vertex_index("t").unwrap()]);
    assert!(f.faces.iter().all(|x| x.apex_level == 3));
}

#[test]
fn reversing_one_rotation_of_k4_breaks_planarity() {
    let g = fixtures::k4_levels();
    let e = brute_force_embeddings(&g).unwrap().embeddings.into_values().next().unwrap();
    let mut rot = e.rotations().to_vec();
    rot[0].reverse();
    let bad = RotationSystem::from_lists(rot);
    assert_eq!(trace_faces(&g, &bad).err(), Some(EmbeddingError::NotPlanar));
}

#[test]
fn d1_drawn_a_left_of_b() {
    let (g, e) = d1_ab();
    assert!(is_level_planar_embedding(&g, &e).unwrap());
    // outgoing edges right to left: (s, b), (s, a), then (s, t) on the far left
    assert!(e.is_ccw(0, edge(&g, "s", "b"), edge(&g, "s", "a"), edge(&g, "s", "t")));
    let d = embedding_to_drawing(&g, &e).unwrap();
    let (_, map) = properize(&g);
    let names: Vec<&str> = d.originals_on(2, &map).into_iter().map(|v| g.id(v)).collect();
    assert_eq!(names, ["a", "b"]);
    let mirrored = embedding_to_drawing(&g, &e.reflect()).unwrap();
    let names: Vec<&str> = mirrored.originals_on(2, &map).into_iter().map(|v| g.id(v)).collect();
    assert_eq!(names, ["b", "a"]);
}

#[test]
fn r2_with_z_on_the_low_side_is_not_level_planar() {
    let g = fixtures::r2();
    let lp = build_lp_tree(&g).unwrap();
    let pass = arc_pass(&g, lp.reference());
    let inner = pass
        .tree
        .node_ids()
        .find(|&x| pass.tree.parent(x).is_some() && pass.tree.skeleton_vertices(x).len() == 4 && pass.heights[x] == 5)
        .unwrap();
    for e in lp.enumerate() {
        assert!(is_level_planar_embedding(&g, &e).unwrap());
        let flipped = reflect_node(&g, &pass.tree, &e, inner);
        assert!(is_planar(&g, &flipped));
        assert!(!is_level_planar_embedding(&g, &flipped).unwrap());
    }
}

#[test]
fn single_edge_is_level_planar() {
    let g = LevelGraph::from_ids(&[("s", 1), ("t", 2)], &[("s", "t")]).unwrap();
    assert!(is_level_planar_embedding(&g, &RotationSystem::incidence_order(&g)).unwrap());
}

#[test]
fn characterization_rejects_bad_preconditions() {
    let g = LevelGraph::from_ids(&[("s", 1), ("u", 1), ("t", 2)], &[("s", "t"), ("u", "t")]).unwrap();
    assert!(matches!(
        is_level_planar_embedding(&g, &RotationSystem::incidence_order(&g)),
        Err(EmbeddingError::Precondition(_))
    ));
}

#[test]
fn st_augment_leaves_st_graphs_alone() {
    let (g, e) = d1_ab();
    let (h, f) = st_augment(&g, &e).unwrap();
    assert_eq!(h.m(), g.m());
    assert_eq!(f, e);
}

#[test]
fn st_augment_p1_adds_one_edge_from_x() {
    let g = fixtures::p1();
    let x = g.vertex_index("x").unwrap();
    for e in brute_force_embeddings(&g).unwrap().embeddings.values() {
        let (h, f) = st_augment(&g, e).unwrap();
        assert_eq!(h.m(), g.m() + 1);
        let (tail, head) = h.edge(g.m());
        assert_eq!(tail, x);
        assert!(h.level(head) > h.level(x));
        assert!(is_planar(&h, &f));
        assert!(is_level_planar_embedding(&h, &f).unwrap());
    }
}

#[test]
fn st_augment_rejects_non_level_planar_embeddings() {
    let g = fixtures::r2();
    let lp = build_lp_tree(&g).unwrap();
    let pass = arc_pass(&g, lp.reference());
    let inner = pass.tree.node_ids().find(|&x| pass.tree.parent(x).is_some() && pass.heights[x] == 5).unwrap();
    let flipped = reflect_node(&g, &pass.tree, lp.reference(), inner);
    assert!(matches!(st_augment(&g, &flipped), Err(EmbeddingError::NotLevelPlanar(_))));
}

#[test]
fn drawings_round_trip_on_fixtures() {
    for g in [fixtures::d1(), fixtures::p1(), fixtures::r2(), fixtures::k4_levels()] {
        for e in brute_force_embeddings(&g).unwrap().embeddings.values() {
            let d = embedding_to_drawing(&g, e).unwrap();
            assert!(is_level_planar_drawing(&g, &d));
            let back = drawing_to_embedding(&g, &d).unwrap();
            assert_eq!(canonical_form(&g, &back), canonical_form(&g, e));
            assert_eq!(embedding_to_drawing(&g, &back).unwrap(), d);
        }
    }
}

#[test]
fn drawing_of_a_path_gives_its_only_rotation() {
    let g = LevelGraph::from_ids(&[("s", 1), ("a", 2), ("b", 3)], &[("s", "a"), ("a", "b")]).unwrap();
    let e = drawing_to_embedding(&g, &drawing(&g, &[&["s"], &["a"], &["b"]])).unwrap();
    assert_eq!(e.rotations(), &[vec![0], vec![0, 1], vec![1]]);
}

#[test]
fn crossing_drawings_are_rejected() {
    let (g, _) = d1_ab();
    assert!(is_level_planar_drawing(&g, &drawing(&g, &[&["s"], &["s~t@2", "a", "b"], &["t"]])));

    // K4 with one vertex per level: the dummies of (s, b) and (s, t) on level 2
    // sit on the wrong sides of a
    let k4 = fixtures::k4_levels();
    let d = drawing(&k4, &[&["s"], &["s~b@2", "a", "s~t@2"], &["a~t@3", "b", "s~t@3"], &["t"]]);
    assert!(!is_level_planar_drawing(&k4, &d));
    assert!(matches!(drawing_to_embedding(&k4, &d), Err(EmbeddingError::Crossing(..))));

    // P1 with the tall child b between a and the edge (s, v)
    let p1 = fixtures::p1();
    let d = drawing(
        &p1,
        &[&["s"], &["s~t@2", "a", "b", "s~v@2"], &["s~t@3", "v", "b~x@3"], &["s~t@4", "v~t@4", "x"], &["t"]],
    );
    assert!(!is_level_planar_drawing(&p1, &d));
}

#[test]
fn canonical_form_separates_mirrors() {
    let g = fixtures::d1();
    let set = brute_force_embeddings(&g).unwrap();
    let keys: Vec<&String> = set.keys().collect();
    assert_eq!(keys.len(), 2);
    let e = set.embeddings.values().next().unwrap();
    assert_eq!(canonical_form(&g, e), canonical_form(&g, &e.clone()));
    assert_ne!(canonical_form(&g, e), canonical_form(&g, &e.reflect()));
    assert!(set.contains(&canonical_form(&g, &e.reflect())));
}

#[test]
fn st_graph_planar_embeddings_are_all_level_planar() {
    // D1 and K4 are st-graphs: every planar rotation system is level planar
    for g in [fixtures::d1(), fixtures::k4_levels()] {
        let all = planar_rotations_brute(&g);
        assert_eq!(keys(&g, all.iter()), oracle_keys(&g));
        assert!(all.iter().all(|e| is_level_planar_embedding(&g, e).unwrap()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn characterization_matches_the_oracle(seed in any::<u64>()) {
        let g = random_instances(seed, 1, 8).pop().unwrap();
        let oracle = oracle_keys(&g);
        for e in planar_embeddings(&g) {
            prop_assert_eq!(is_level_planar_embedding(&g, &e).unwrap(), oracle.contains(&canonical_form(&g, &e)));
        }
    }

    #[test]
    fn augmentation_extends_and_stays_level_planar(seed in any::<u64>()) {
        let g = random_instances(seed, 1, 9).pop().unwrap();
        for e in brute_force_embeddings(&g).unwrap().embeddings.values().take(20) {
            let (h, f) = st_augment(&g, e).unwrap();
            let t = h.apex().unwrap();
            prop_assert!((0..h.n()).all(|v| v == t || h.out_edges(v).next().is_some()));
            prop_assert!(is_planar(&h, &f));
            prop_assert!(is_level_planar_embedding(&h, &f).unwrap());
            let keep: Vec<bool> = (0..h.m()).map(|x| x < g.m()).collect();
            prop_assert_eq!(canonical_form(&g, &f.restrict(&keep)), canonical_form(&g, e));
        }
    }

    #[test]
    fn drawing_round_trip(seed in any::<u64>()) {
        let g = random_instances(seed, 1, 9).pop().unwrap();
        for e in brute_force_embeddings(&g).unwrap().embeddings.values().take(20) {
            let d = embedding_to_drawing(&g, e).unwrap();
            prop_assert!(is_level_planar_drawing(&g, &d));
            let back = drawing_to_embedding(&g, &d).unwrap();
            prop_assert_eq!(canonical_form(&g, &back), canonical_form(&g, e));
        }
    }
}
