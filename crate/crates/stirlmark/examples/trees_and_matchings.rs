//! Bicolored increasing binary trees: the inorder bijection, the branch
//! move, DOT output, and the matching encoding of a reverse-alternating
//! word with complete tree.
//!
//! ```bash
//! cargo run --release -p stirlmark --example trees_and_matchings
//! ```

use stirlmark::generate::gen_h_matchings;
use stirlmark::maps::{matching_of, perm_of_tree, tree_involution, tree_of};
use stirlmark::objects::MarkedPerm;

fn main() {
    let m = MarkedPerm::decode_text("2 3 1 5:1 4:1 6").unwrap();
    let t = tree_of(&m);
    println!("tree of {m}:\n{t}");
    println!("\nDOT form:\n{}", t.to_dot());

    let moved = tree_involution(&tree_of(
        &MarkedPerm::decode_text("4 6:1 3 8 7:1 5 1 2:1").unwrap(),
    ))
    .unwrap();
    println!("after the branch move: {}", perm_of_tree(&moved).unwrap());

    let alt = MarkedPerm::decode_text("3 5:1 1 6:1 2:1 4").unwrap();
    println!("\nmatching of {alt}: {}", matching_of(&alt).unwrap());
    println!("h-matchings of [8]: {}", gen_h_matchings(2).count());
}
