//! Cross-check the LP-tree against brute force over level drawings on
//! random small graphs.

use levelplan::embedding::canonical_form;
use levelplan::generate::random_lp_instance;
use levelplan::lptree::build_lp_tree;
use levelplan::oracle::brute_force_embeddings;
use rand::{Rng, SeedableRng};

fn main() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let (mut planar, mut total) = (0, 0);
    for _ in 0..300 {
        let n = rng.gen_range(4..=9);
        let g = random_lp_instance(&mut rng, n, 4, 4, 0.3);
        let oracle = brute_force_embeddings(&g).unwrap();
        let from_tree: Vec<String> = match build_lp_tree(&g) {
            Ok(lp) => lp.enumerate().map(|e| canonical_form(&g, &e)).collect(),
            Err(_) => Vec::new(),
        };
        assert_eq!(from_tree.len(), oracle.count());
        assert!(from_tree.iter().all(|k| oracle.contains(k)));
        total += 1;
        planar += usize::from(oracle.count() > 0);
    }
    println!("{total} graphs, {planar} level planar, LP-tree and oracle agree");
}
