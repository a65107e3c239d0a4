//! Sign-reversing involutions: toggling the smallest unmarked non-minimum
//! cancels everything except one object, so the signed sums collapse to 1;
//! on trees, moving one subtree cancels the derangement class down to the
//! matching numbers.
//!
//! ```bash
//! cargo run --release -p stirlmark --example sign_reversing
//! ```

use stirlmark::generate::{gen_marked, gen_stirling_derangements};
use stirlmark::maps::{iota, phi, tree_involution, tree_of, MapError};
use stirlmark::stats::{ap_count, mark_count};

fn main() {
    for n in 1..=6 {
        let signed: i64 = gen_marked(n, 2)
            .map(|m| {
                if mark_count(m.colors()) % 2 == 0 {
                    1
                } else {
                    -1
                }
            })
            .sum();
        println!("n={n}: signed sum over marked permutations is {signed}");
    }

    let m = stirlmark::objects::MarkedPerm::decode_text("2 5:1 3 1 4").unwrap();
    println!("\niota({m}) = {}", iota(&m).unwrap());

    println!("\nsigned plateau sums over Stirling derangements:");
    for n in 1..=6 {
        let mut total: i64 = 0;
        let mut fixed = 0usize;
        for s in gen_stirling_derangements(n) {
            total += if ap_count(s.word()) % 2 == 0 { 1 } else { -1 };
            if tree_involution(&tree_of(&phi(&s))) == Err(MapError::Complete) {
                fixed += 1;
            }
        }
        println!("  n={n}: sum={total:>5}, trees without a move: {fixed}");
    }
}
