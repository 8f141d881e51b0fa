//! Small named graphs used by the examples, the tests and the CLI.

use crate::levelgraph::LevelGraph;

/// Two parallel paths `s-a-t`, `s-b-t` and the edge `(s, t)`.
pub fn d1() -> LevelGraph {
    LevelGraph::from_ids(
        &[("s", 1), ("a", 2), ("b", 2), ("t", 3)],
        &[("s", "a"), ("s", "b"), ("a", "t"), ("b", "t"), ("s", "t")],
    )
    .unwrap()
}

/// A P-node between `s` and `v` with one child (`b`, `x`) that reaches above `v`.
pub fn p1() -> LevelGraph {
    LevelGraph::from_ids(
        &[("s", 1), ("a", 2), ("b", 2), ("v", 3), ("x", 4), ("t", 5)],
        &[
            ("s", "v"),
            ("s", "a"),
            ("a", "v"),
            ("s", "b"),
            ("b", "v"),
            ("b", "x"),
            ("v", "x"),
            ("v", "t"),
            ("s", "t"),
        ],
    )
    .unwrap()
}

/// A K4 on `s, p, q, t` whose edge `(p, q)` is replaced by a second K4 on `p, q, y, z`.
pub fn r2() -> LevelGraph {
    LevelGraph::from_ids(
        &[("s", 1), ("p", 2), ("q", 3), ("y", 4), ("z", 5), ("t", 6)],
        &[
            ("s", "p"),
            ("s", "q"),
            ("s", "t"),
            ("p", "t"),
            ("q", "t"),
            ("p", "y"),
            ("p", "z"),
            ("q", "y"),
            ("q", "z"),
            ("y", "z"),
        ],
    )
    .unwrap()
}

/// K4 with one vertex per level.
pub fn k4_levels() -> LevelGraph {
    LevelGraph::from_ids(
        &[("s", 1), ("a", 2), ("b", 3), ("t", 4)],
        &[("s", "a"), ("s", "b"), ("s", "t"), ("a", "b"), ("a", "t"), ("b", "t")],
    )
    .unwrap()
}

pub fn by_name(name: &str) -> Option<LevelGraph> {
    match name {
        "D1" | "d1" => Some(d1()),
        "P1" | "p1" => Some(p1()),
        "R2" | "r2" => Some(r2()),
        "K4" | "k4" => Some(k4_levels()),
        _ => None,
    }
}
