//! Precondition report for a graph that needs a super-sink, before and after.

use levelplan::levelgraph::{add_super_sink, validate, LevelGraph};
use levelplan::lptree::build_lp_tree;

fn main() {
    // two sinks (c and d) and no (s, t) edge
    let g = LevelGraph::from_ids(
        &[("s", 1), ("a", 2), ("b", 2), ("c", 3), ("d", 3)],
        &[("s", "a"), ("s", "b"), ("a", "c"), ("b", "c"), ("b", "d")],
    )
    .unwrap();
    let d = validate(&g);
    println!("lp-ready: {}", d.lp_ready());
    println!("{}", serde_json::to_string_pretty(&d).unwrap());

    let h = add_super_sink(&g).unwrap();
    let t = h.super_sink().unwrap();
    println!("added {} on level {}", h.id(t), h.level(t));
    println!("lp-ready: {}", validate(&h).lp_ready());
    println!("embeddings: {}", build_lp_tree(&h).unwrap().count());
}
