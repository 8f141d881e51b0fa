//! Write an SVG of one level-planar drawing of R2.

use levelplan::cli::render_svg;
use levelplan::embedding::embedding_to_drawing;
use levelplan::fixtures;
use levelplan::lptree::build_lp_tree;

fn main() {
    let g = fixtures::r2();
    let lp = build_lp_tree(&g).unwrap();
    let d = embedding_to_drawing(&g, lp.reference()).unwrap();
    let path = std::env::args().nth(1).unwrap_or_else(|| "r2.svg".into());
    std::fs::write(&path, render_svg(&g, &d)).unwrap();
    println!("wrote {path}");
}
