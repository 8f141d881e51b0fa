//! Simultaneous embeddings: two graphs that share a level graph and differ
//! in a few exclusive edges.

use levelplan::embedding::canonical_form;
use levelplan::fixtures;
use levelplan::levelgraph::LevelGraph;
use levelplan::solvers::{solve_simultaneous, Outcome, SefeInstance};

fn show(name: &str, s: &SefeInstance) {
    match solve_simultaneous(s).unwrap() {
        Outcome::Sat(w) => println!(
            "{name}: SAT\n  {}\n  {}",
            canonical_form(&w.graph1, &w.embedding1),
            canonical_form(&w.graph2, &w.embedding2)
        ),
        Outcome::Unsat(why) => println!("{name}: UNSAT ({why})"),
    }
}

fn main() {
    let g = fixtures::p1();
    let id = |s: &str| g.vertex_index(s).unwrap();
    show("P1 with a-t / b-t", &SefeInstance::new(g.clone(), vec![(id("a"), id("t"))], vec![(id("b"), id("t"))]).unwrap());

    // three paths between s and v; every edge to t needs one of the two outer slots
    let fan = LevelGraph::from_ids(
        &[("s", 1), ("a", 2), ("b", 2), ("c", 2), ("v", 3), ("t", 4)],
        &[("s", "a"), ("s", "b"), ("s", "c"), ("a", "v"), ("b", "v"), ("c", "v"), ("v", "t"), ("s", "t")],
    )
    .unwrap();
    let id = |s: &str| fan.vertex_index(s).unwrap();
    let (a, b, c, t) = (id("a"), id("b"), id("c"), id("t"));
    show("fan with a-t, b-t / c-t", &SefeInstance::new(fan.clone(), vec![(a, t), (b, t)], vec![(c, t)]).unwrap());
    show("fan with a-t / c-t", &SefeInstance::new(fan, vec![(a, t)], vec![(c, t)]).unwrap());
}
