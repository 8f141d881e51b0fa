mod common;

use common::*;
use levelplan::embedding::{canonical_form, embedding_to_drawing, is_level_planar_drawing};
use levelplan::fixtures;
use levelplan::levelgraph::LevelGraph;
use levelplan::lptree::build_lp_tree;
use levelplan::oracle::{brute_force_embeddings, brute_force_verdict, Instance};
use levelplan::solvers::{
    extends, solve_constrained, solve_partial, solve_partial_vertex_orders, solve_simultaneous, translate_order_constraint,
    translate_order_constraints, ClgInstance, Outcome, PegInstance, SefeInstance, SolverError,
};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

fn v(g: &LevelGraph, id: &str) -> usize {
    g.vertex_index(id).unwrap()
}

fn names(g: &LevelGraph, row: &[usize]) -> Vec<String> {
    row.iter().filter(|&&x| x < g.n()).map(|&x| g.id(x).to_string()).collect()
}

#[test]
fn d1_order_b_before_a() {
    let c = ClgInstance::from_json(include_str!("../data/d1_order.json")).unwrap();
    let d = solve_constrained(&c).unwrap().sat().unwrap();
    assert_eq!(names(&c.graph, &d.levels[1]), ["b", "a"]);
}

#[test]
fn d1_contradicting_orders() {
    let c = ClgInstance::from_json(include_str!("../data/d1_contradiction.json")).unwrap();
    assert!(!solve_constrained(&c).unwrap().is_sat());
}

#[test]
fn order_pairs_must_share_a_level() {
    let g = fixtures::d1();
    assert!(matches!(ClgInstance::new(g.clone(), vec![(v(&g, "s"), v(&g, "a"))]), Err(SolverError::Input(_))));
    assert!(matches!(ClgInstance::new(g.clone(), vec![(v(&g, "a"), v(&g, "a"))]), Err(SolverError::Input(_))));
}

#[test]
fn d1_order_triple_sits_at_s() {
    let g = fixtures::d1();
    let (a, b) = (v(&g, "a"), v(&g, "b"));
    let c = translate_order_constraint(&g, a, b).unwrap();
    assert_eq!(c.w, v(&g, "s"));
    let mut es = c.edges;
    es.sort_unstable();
    let mut want = [g.edge_by_ids("s", "a").unwrap(), g.edge_by_ids("s", "b").unwrap(), g.edge_by_ids("s", "t").unwrap()];
    want.sort_unstable();
    assert_eq!(es, want);
    // the reversed pair gives the reversed triple
    let r = translate_order_constraint(&g, b, a).unwrap();
    for e in brute_force_embeddings(&g).unwrap().embeddings.values() {
        let holds = |t: &levelplan::solvers::ConstraintTriple| e.is_ccw(t.w, t.edges[0], t.edges[1], t.edges[2]);
        assert_ne!(holds(&c), holds(&r));
    }
}

#[test]
fn d1_partial_rotation_at_s() {
    let p = PegInstance::from_json(include_str!("../data/d1_partial.json")).unwrap();
    let e = solve_partial(&p).unwrap().sat().unwrap();
    assert!(extends(&p, &e));
    let d = embedding_to_drawing(&p.graph, &e).unwrap();
    assert_eq!(names(&p.graph, &d.levels[1]), ["a", "b"]);
}

#[test]
fn p1_partial_is_sat() {
    let p = PegInstance::from_json(include_str!("../data/p1_partial.json")).unwrap();
    let e = solve_partial(&p).unwrap().sat().unwrap();
    assert!(extends(&p, &e));
    assert!(brute_force_embeddings(&p.graph).unwrap().contains(&canonical_form(&p.graph, &e)));
}

#[test]
fn partial_with_everything_fixed_returns_that_embedding() {
    let g = fixtures::p1();
    for e in brute_force_embeddings(&g).unwrap().embeddings.values() {
        let p = PegInstance::from_embedding(g.clone(), (0..g.m()).collect(), e).unwrap();
        let got = solve_partial(&p).unwrap().sat().unwrap();
        assert_eq!(canonical_form(&g, &got), canonical_form(&g, e));
    }
}

#[test]
fn partial_rotation_must_list_the_subgraph_edges() {
    let g = fixtures::d1();
    let sa = g.edge_by_ids("s", "a").unwrap();
    let sb = g.edge_by_ids("s", "b").unwrap();
    let st = g.edge_by_ids("s", "t").unwrap();
    let mut rot = vec![Vec::new(); g.n()];
    rot[v(&g, "s")] = vec![sa, sb];
    assert!(PegInstance::new(g.clone(), vec![sa, sb, st], rot).is_err());
    assert!(PegInstance::new(g.clone(), vec![sa, sa], vec![Vec::new(); g.n()]).is_err());
}

#[test]
fn partial_rejects_a_mirror_mismatch() {
    // rotation at s asks for a left of b, rotation at t for b left of a
    let g = fixtures::d1();
    let e = |a: &str, b: &str| g.edge_by_ids(a, b).unwrap();
    let mut rot = vec![Vec::new(); g.n()];
    rot[v(&g, "s")] = vec![e("s", "b"), e("s", "a"), e("s", "t")];
    rot[v(&g, "t")] = vec![e("b", "t"), e("a", "t"), e("s", "t")];
    let p = PegInstance::new(g.clone(), (0..g.m()).collect(), rot).unwrap();
    let want = brute_force_verdict(&Instance::Partial(p.clone()), 10).unwrap();
    assert_eq!(solve_partial(&p).unwrap().is_sat(), want.is_sat());
}

#[test]
fn vertex_orders_on_p1() {
    let g = fixtures::p1();
    let (a, b) = (v(&g, "a"), v(&g, "b"));
    for row in [vec![a, b], vec![b, a]] {
        let d = solve_partial_vertex_orders(&g, &[row.clone()]).unwrap().sat().unwrap();
        let pos = positions(g.n(), &d.levels);
        assert!(pos[row[0]] < pos[row[1]]);
    }
}

#[test]
fn sefe_fixture_pairs() {
    let s = SefeInstance::from_json(include_str!("../data/p1_sefe.json")).unwrap();
    let w = solve_simultaneous(&s).unwrap().sat().unwrap();
    let g = &s.graph;
    let keep1: Vec<bool> = (0..w.graph1.m()).map(|e| e < g.m()).collect();
    let keep2: Vec<bool> = (0..w.graph2.m()).map(|e| e < g.m()).collect();
    assert_eq!(canonical_form(g, &w.embedding1.restrict(&keep1)), canonical_form(g, &w.embedding2.restrict(&keep2)));

    // each side alone is level planar, together they need three outer slots
    let s = SefeInstance::from_json(include_str!("../data/fan_sefe_unsat.json")).unwrap();
    let (g1, g2) = s.graphs().unwrap();
    assert!(build_lp_tree(&g1).is_ok() && build_lp_tree(&g2).is_ok());
    assert!(!solve_simultaneous(&s).unwrap().is_sat());
    assert!(!brute_force_verdict(&Instance::Simultaneous(s), 10).unwrap().is_sat());
}

#[test]
fn sefe_rejects_existing_or_repeated_edges() {
    let g = fixtures::p1();
    let (s, v_, x, t) = (v(&g, "s"), v(&g, "v"), v(&g, "x"), v(&g, "t"));
    assert!(SefeInstance::new(g.clone(), vec![(s, v_)], vec![]).is_err());
    assert!(SefeInstance::new(g.clone(), vec![(x, t)], vec![(x, t)]).is_err());
}

#[test]
fn solvers_report_non_level_planar_graphs() {
    let g = fixtures::p1().with_extra_edges(&[(1, 4)]).unwrap(); // (a, x)
    assert!(brute_force_embeddings(&g).unwrap().count() == 0);
    let p = PegInstance::new(g.clone(), Vec::new(), vec![Vec::new(); g.n()]).unwrap();
    assert!(!solve_partial(&p).unwrap().is_sat());
    assert!(!solve_constrained(&ClgInstance::new(g, Vec::new()).unwrap()).unwrap().is_sat());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn order_triples_hold_exactly_when_drawn_in_order(seed in any::<u64>()) {
        let g = random_instances(seed, 1, 9).pop().unwrap();
        let mut r = rng(seed ^ 1);
        let pairs: Vec<(usize, usize)> = (0..6)
            .filter_map(|_| {
                let u = r.gen_range(0..g.n());
                let same: Vec<usize> = (0..g.n()).filter(|&w| w != u && g.level(w) == g.level(u)).collect();
                same.choose(&mut r).map(|&w| (u, w))
            })
            .collect();
        let triples = translate_order_constraints(&g, &pairs).unwrap();
        for e in brute_force_embeddings(&g).unwrap().embeddings.values() {
            let d = embedding_to_drawing(&g, e).unwrap();
            let pos = positions(g.n(), &d.levels);
            for (&(u, w), c) in pairs.iter().zip(&triples) {
                prop_assert_eq!(e.is_ccw(c.w, c.edges[0], c.edges[1], c.edges[2]), pos[u] < pos[w]);
            }
        }
    }

    #[test]
    fn partial_matches_the_oracle(seed in any::<u64>()) {
        let g = random_instances(seed, 1, 8).pop().unwrap();
        let p = random_peg(&mut rng(seed), &g);
        let got = solve_partial(&p).unwrap();
        prop_assert_eq!(got.is_sat(), brute_force_verdict(&Instance::Partial(p.clone()), 10).unwrap().is_sat());
        if let Outcome::Sat(e) = got {
            prop_assert!(extends(&p, &e));
        }
    }

    #[test]
    fn constrained_matches_the_oracle(seed in any::<u64>()) {
        let g = random_instances(seed, 1, 8).pop().unwrap();
        let c = random_clg(&mut rng(seed), &g, 5);
        let got = solve_constrained(&c).unwrap();
        prop_assert_eq!(got.is_sat(), brute_force_verdict(&Instance::Constrained(c.clone()), 10).unwrap().is_sat());
        if let Outcome::Sat(d) = got {
            let pos = positions(g.n(), &d.levels);
            prop_assert!(is_level_planar_drawing(&g, &d));
            prop_assert!(c.constraints.iter().all(|&(u, w)| pos[u] < pos[w]));
        }
    }

    #[test]
    fn vertex_orders_match_drawings(seed in any::<u64>()) {
        let g = random_instances(seed, 1, 8).pop().unwrap();
        let mut r = rng(seed);
        let top = g.max_level();
        let mut orders = Vec::new();
        for l in 1..=top {
            let mut row: Vec<usize> = (0..g.n()).filter(|&w| g.level(w) == l && r.gen_bool(0.7)).collect();
            row.shuffle(&mut r);
            if row.len() >= 2 {
                orders.push(row);
            }
        }
        let want = brute_force_embeddings(&g).unwrap().embeddings.values().any(|e| {
            let pos = positions(g.n(), &embedding_to_drawing(&g, e).unwrap().levels);
            orders.iter().all(|row| row.windows(2).all(|w| pos[w[0]] < pos[w[1]]))
        });
        prop_assert_eq!(solve_partial_vertex_orders(&g, &orders).unwrap().is_sat(), want);
    }

    #[test]
    fn simultaneous_matches_the_oracle(seed in any::<u64>()) {
        let g = random_instances(seed, 1, 8).pop().unwrap();
        let s = random_sefe(&mut rng(seed), &g, 3);
        let got = solve_simultaneous(&s).unwrap();
        prop_assert_eq!(got.is_sat(), brute_force_verdict(&Instance::Simultaneous(s.clone()), 10).unwrap().is_sat());
    }
}
