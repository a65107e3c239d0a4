//! Compute the statistic reports of a few objects, both as value sets and
//! as counts.
//!
//! ```bash
//! cargo run --release -p stirlmark --example statistics
//! ```

use stirlmark::objects::{CycleStirlingPerm, MarkedPerm, StirlingPerm};
use stirlmark::stats::{cycle_stirling_stats, perm_stats, stirling_stats};

fn main() {
    let m = MarkedPerm::decode_text("3 5:1 2 1 4:1 6 7").unwrap();
    println!("marked permutation {m}:");
    println!(
        "{}",
        serde_json::to_string_pretty(&perm_stats(&m).to_json()).unwrap()
    );

    let s = StirlingPerm::decode_text("2 2 1 3 3 1").unwrap();
    println!("\nStirling permutation {s}:");
    println!(
        "{}",
        serde_json::to_string_pretty(&stirling_stats(&s).to_json()).unwrap()
    );

    let c = CycleStirlingPerm::decode_text("(1 2 2 1) (3 3)").unwrap();
    println!("\ncycle form {c}:");
    println!(
        "{}",
        serde_json::to_string_pretty(&cycle_stirling_stats(&c).to_json()).unwrap()
    );
}
