//! Heights, spaces and arc labels of every node, then the final tree.
//!
//! Usage: `cargo run --example lptree_dump [graph.json]` (defaults to R2).

use levelplan::fixtures;
use levelplan::levelgraph::LevelGraph;
use levelplan::lptree::build_lp_tree;

fn main() {
    let g = match std::env::args().nth(1) {
        Some(path) => LevelGraph::from_json(&std::fs::read_to_string(path).unwrap()).unwrap(),
        None => fixtures::r2(),
    };
    let lp = build_lp_tree(&g).unwrap();
    println!("{:?}", lp.stats());
    let t = lp.tree();
    for x in t.top_down() {
        let (u, v) = t.node(x).poles;
        println!(
            "node {x:>3} {:?} poles ({}, {}) height {}{}",
            t.kind(x),
            g.id(u),
            g.id(v),
            lp.height(x),
            t.parent(x).map_or(String::new(), |_| format!(" space {} {:?}", lp.space(x), lp.label(x))),
        );
    }
    println!("{}", serde_json::to_string_pretty(&lp.dump()).unwrap());
}
