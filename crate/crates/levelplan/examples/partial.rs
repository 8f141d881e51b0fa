//! Extend a partial embedding: fix the rotation at `v` in P1 and let the
//! solver place the rest.

use levelplan::embedding::embedding_to_drawing;
use levelplan::fixtures;
use levelplan::solvers::{solve_partial, Outcome, PegInstance};

fn main() {
    let g = fixtures::p1();
    let e = |a: &str, b: &str| g.edge_by_ids(a, b).unwrap();
    let v = g.vertex_index("v").unwrap();
    let h = vec![e("s", "v"), e("a", "v"), e("v", "x"), e("v", "t")];
    for rot in [
        vec![e("v", "x"), e("s", "v"), e("a", "v"), e("v", "t")],
        vec![e("v", "x"), e("a", "v"), e("v", "t"), e("s", "v")],
    ] {
        let mut rotation = vec![Vec::new(); g.n()];
        rotation[v] = rot;
        let p = PegInstance::new(g.clone(), h.clone(), rotation).unwrap();
        match solve_partial(&p).unwrap() {
            Outcome::Sat(emb) => {
                let d = embedding_to_drawing(&g, &emb).unwrap();
                println!("SAT {:?}", d.to_json(&levelplan::levelgraph::properize(&g).0).levels);
            }
            Outcome::Unsat(why) => println!("UNSAT: {why}"),
        }
    }
}
