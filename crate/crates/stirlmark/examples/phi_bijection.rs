//! The bijection between Stirling permutations and marked permutations:
//! apply it to a 12-letter word, invert it, and sweep a whole order to watch
//! the set-valued statistics transfer.
//!
//! ```bash
//! cargo run --release -p stirlmark --example phi_bijection
//! ```

use stirlmark::generate::gen_stirling;
use stirlmark::maps::{phi, phi_inv};
use stirlmark::objects::StirlingPerm;
use stirlmark::stats::{perm_stats, stirling_stats, StatName};

fn main() {
    let sigma = StirlingPerm::decode_text("2 6 6 2 5 5 1 3 4 4 3 1").unwrap();
    let pi = phi(&sigma);
    println!("phi({sigma}) = {pi}");
    println!("phi_inv({pi}) = {}", phi_inv(&pi).unwrap());

    println!("\norder 3, statistic transfer (LRMIN, AP->ASC, EVEN->MARK):");
    for s in gen_stirling(3) {
        let m = phi(&s);
        let sr = stirling_stats(&s);
        let mr = perm_stats(&m);
        assert_eq!(sr.set(StatName::Lrmin), mr.set(StatName::Lrmin));
        assert_eq!(sr.set(StatName::Ap), mr.set(StatName::Asc));
        assert_eq!(sr.set(StatName::Even), mr.set(StatName::Mark));
        println!(
            "  {s}  ->  {m:<12} lrmin={:?} ap/asc={:?} even/mark={:?}",
            sr.set(StatName::Lrmin).unwrap(),
            sr.set(StatName::Ap).unwrap(),
            sr.set(StatName::Even).unwrap(),
        );
    }
}
