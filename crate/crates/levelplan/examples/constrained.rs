//! Left-to-right order constraints on same-level vertices.

use levelplan::fixtures;
use levelplan::solvers::{solve_constrained, translate_order_constraint, ClgInstance, Outcome};

fn main() {
    let g = fixtures::d1();
    let (a, b) = (g.vertex_index("a").unwrap(), g.vertex_index("b").unwrap());
    let c = translate_order_constraint(&g, b, a).unwrap();
    let edges: Vec<_> = c.edges.iter().map(|&e| format!("({}, {})", g.id(g.edge(e).0), g.id(g.edge(e).1))).collect();
    println!("b before a is the triple at {}: {}", g.id(c.w), edges.join(" "));

    for cons in [vec![(b, a)], vec![(a, b), (b, a)]] {
        match solve_constrained(&ClgInstance::new(g.clone(), cons).unwrap()).unwrap() {
            Outcome::Sat(d) => {
                let row: Vec<&str> = d.levels[1].iter().filter(|&&v| v < g.n()).map(|&v| g.id(v)).collect();
                println!("SAT, level 2 reads {row:?}");
            }
            Outcome::Unsat(why) => println!("UNSAT: {why}"),
        }
    }
}
