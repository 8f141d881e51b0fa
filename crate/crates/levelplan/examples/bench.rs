//! LP-tree construction time on generated graphs of growing size.
//!
//! Run with `--release`; sizes may be given as arguments.

use levelplan::cli::bench_times;

fn main() {
    let mut sizes: Vec<usize> = std::env::args().skip(1).map(|s| s.parse().unwrap()).collect();
    if sizes.is_empty() {
        sizes = vec![12_500, 25_000, 50_000, 100_000];
    }
    let times = bench_times(&sizes, 3, 1).unwrap();
    let mut prev: Option<f64> = None;
    for (n, secs) in times {
        match prev {
            Some(p) => println!("{n:>8} vertices {secs:>8.3}s  x{:.2}", secs / p),
            None => println!("{n:>8} vertices {secs:>8.3}s"),
        }
        prev = Some(secs);
    }
}
