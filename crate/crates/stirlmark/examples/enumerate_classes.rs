//! Enumerate every object class and tabulate the shared cardinality
//! (2n-1)!! across the five families.
//!
//! ```bash
//! cargo run --release -p stirlmark --example enumerate_classes
//! ```

use stirlmark::generate::{
    gen_cycle_stirling, gen_marked, gen_matchings, gen_stirling, gen_stirling_derangements,
    gen_trees, odd_double_factorial,
};

fn main() {
    println!("order 2 Stirling permutations:");
    for s in gen_stirling(2) {
        println!("  {s}");
    }
    println!("marked permutations of [2]:");
    for m in gen_marked(2, 2) {
        println!("  {m}");
    }
    println!("cycle forms of order 2:");
    for c in gen_cycle_stirling(2) {
        println!("  {c}");
    }
    println!("matchings of [4]:");
    for m in gen_matchings(2) {
        println!("  {m}");
    }
    println!("Stirling derangements of order 3:");
    for s in gen_stirling_derangements(3) {
        println!("  {s}");
    }

    println!(
        "\n{:>2} {:>10} {:>10} {:>10} {:>10} {:>10} {:>10}",
        "n", "(2n-1)!!", "stirling", "marked", "matching", "cycle", "tree"
    );
    for n in 1..=6 {
        println!(
            "{:>2} {:>10} {:>10} {:>10} {:>10} {:>10} {:>10}",
            n,
            odd_double_factorial(n),
            gen_stirling(n).count(),
            gen_marked(n, 2).count(),
            gen_matchings(n).count(),
            gen_cycle_stirling(n).count(),
            gen_trees(n).count(),
        );
    }
}
