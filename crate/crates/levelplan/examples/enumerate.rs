//! Build the LP-tree of a small graph and list every level-planar embedding
//! it represents, as left-to-right orders (dummies of long edges included).

use levelplan::embedding::embedding_to_drawing;
use levelplan::fixtures;
use levelplan::levelgraph::properize;
use levelplan::lptree::build_lp_tree;

fn main() {
    let g = fixtures::p1();
    let lp = build_lp_tree(&g).unwrap();
    println!("{} embeddings", lp.count());
    let (proper, _) = properize(&g);
    for (c, e) in lp.enumerate_choices() {
        let d = embedding_to_drawing(&g, &e).unwrap().to_json(&proper);
        let rows: Vec<String> = d.levels.iter().map(|r| r.join(" ")).collect();
        println!("{}\n    {}", serde_json::to_string(&c).unwrap(), rows.join(" | "));
    }
}
