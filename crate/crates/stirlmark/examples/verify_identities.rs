//! Run every identity checker at its default desk-scale bounds and print a
//! one-line verdict per identity.
//!
//! ```bash
//! cargo run --release -p stirlmark --example verify_identities
//! ```

use stirlmark::verify::verify_all;

fn main() {
    let results = verify_all().expect("checkers ran");
    let mut all_pass = true;
    for res in &results {
        println!("{res}");
        all_pass &= res.pass;
    }
    println!(
        "\n{}",
        if all_pass {
            "all identities verified"
        } else {
            "FAILURES"
        }
    );
    std::process::exit(if all_pass { 0 } else { 1 });
}
