//! Generating-function combinators: sequences, sets and atom weights, with
//! the set-of-blocks construction recovering the Eulerian EGF.
//!
//! ```bash
//! cargo run --release -p stirlmark --example combinators
//! ```

use stirlmark::generate::gen_perms;
use stirlmark::named::{class_combinator, eulerian_series, Combinator};
use stirlmark::poly::{MPoly, Var};
use stirlmark::series::TSeries;
use stirlmark::stats::asc_count;

fn main() {
    let order = 5;
    // the class of permutations whose first entry is 1, ascent-weighted
    let mut egf = vec![MPoly::zero(); order + 1];
    for (n, e) in egf.iter_mut().enumerate().skip(1) {
        for p in gen_perms(n) {
            if p.word()[0] == 1 {
                *e += &MPoly::var_pow(Var::X, asc_count(p.word()) as u16);
            }
        }
    }
    let f = TSeries::from_egf(egf);
    println!("first-entry-minimal class (EGF):");
    println!("{}\n", f.print_lines_egf());

    let set = class_combinator(&f, Combinator::Set, 0).unwrap();
    assert_eq!(set, eulerian_series(order));
    println!("exp of it equals the Eulerian EGF:");
    println!("{}\n", set.print_lines_egf());

    // point weighting keeps integrality: f(x, kt)/k
    for k in 1..=3 {
        let weighted = class_combinator(&f, Combinator::PointWeight, k).unwrap();
        println!(
            "point weight k={k}, EGF coefficient of t^3: {}",
            weighted.egf_coeff(3)
        );
    }
}
