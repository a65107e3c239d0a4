//! The rotate-sort-complement involution and the symmetric colored
//! distribution it explains: tabulate the polynomial for several color
//! counts and check the swap symmetry.
//!
//! ```bash
//! cargo run --release -p stirlmark --example psi_symmetry
//! ```

use stirlmark::maps::psi;
use stirlmark::objects::Perm;
use stirlmark::poly::Var;
use stirlmark::stats::{asc_count, desrlmin_count};
use stirlmark::verify::desrlmin_dist;

fn main() {
    let p = Perm::decode_text("2 1 4 8 5 3 6 9 7").unwrap();
    let q = psi(&p);
    println!("psi({p}) = {q}");
    println!(
        "asc+1 = {} maps to desrlmin = {}",
        asc_count(p.word()) + 1,
        desrlmin_count(q.word())
    );
    println!("psi(psi(p)) = {}", psi(&q));

    println!("\ncolored (asc+1, desrlmin) polynomials:");
    for r in 1..=3u32 {
        for n in 1..=4usize {
            let f = desrlmin_dist(n, r).unwrap();
            assert_eq!(f.swap_vars(Var::X, Var::Y), f, "symmetric in x and y");
            println!("  r={r}, n={n}: {f}");
        }
    }
}
