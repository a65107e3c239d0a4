//! Bijections and involutions between the object classes, with exact
//! inverses where they exist.
//!
//! - [`phi`] / [`phi_inv`]: the recursive bijection between Stirling
//!   permutations of order `n` and marked permutations of `[n]` that
//!   transports the set triple (LRMIN, AP, EVEN) to (LRMIN, ASC, MARK);
//! - [`iota`]: the sign-reversing involution on marked permutations that
//!   toggles the mark of the smallest non-left-to-right minimum;
//! - [`tree_of`] / [`perm_of_tree`]: the inorder bijection with bicolored
//!   increasing binary trees (marked letters become black nodes);
//! - [`tree_involution`]: moves the subtree of the minimal-label non-special
//!   node with exactly one child to the other branch, flipping the parity of
//!   ascent plateaux in the preimage;
//! - [`psi`]: the involution on permutations exchanging `asc+1` with
//!   `desrlmin` (rotate rl-blocks max-last, sort blocks by maxima
//!   descending, complement);
//! - [`foata_cycles`] / [`matching_of`]: the cycle pairing that encodes a
//!   reverse-alternating marked permutation with complete tree as a perfect
//!   matching in which `2i-1` and `2i` share ascending/descending status.

use crate::objects::{
    block_ranges, lrmin_positions, rl_block_ranges, BicoloredTree, Color, MarkedPerm, Matching,
    Perm, StirlingPerm, TreeNode, Val,
};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MapError {
    InvalidInput(String),
    /// The involution on markings has no move: every entry is a
    /// left-to-right minimum (the decreasing permutation).
    FixedClass,
    /// The tree involution has no applicable node.
    Complete,
    /// Inverse-map case analysis found no consistent preimage; firing this
    /// would be a bug, it exists as a detector.
    NotInImage(String),
}

impl fmt::Display for MapError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapError::InvalidInput(m) => write!(f, "invalid input: {m}"),
            MapError::FixedClass => {
                write!(f, "fixed class: every entry is a left-to-right minimum")
            }
            MapError::Complete => write!(f, "complete: no non-special node with exactly one child"),
            MapError::NotInImage(m) => write!(f, "not in image: {m}"),
        }
    }
}

impl std::error::Error for MapError {}

// ---------------------------------------------------------------------------
// phi and its inverse
// ---------------------------------------------------------------------------

/// Map a Stirling permutation to a marked permutation by stripping the
/// largest value pair `mm` (always adjacent), recursing, and re-inserting a
/// single `m`:
///
/// - `mm` at the front prepends an unmarked `m` (the only way a new block
///   appears);
/// - `mm` immediately before the second copy of the block's minimum appends
///   a marked `m` at that block's end;
/// - `mm` at the end of a block appends an unmarked `m` there;
/// - `mm` immediately before any other entry `s` inserts `m` before `s`,
///   marked exactly when the first copy of `m` sits at an even position.
pub fn phi(s: &StirlingPerm) -> MarkedPerm {
    let (word, colors) = phi_words(s.word());
    MarkedPerm::new_unchecked(word, colors, 2)
}

fn phi_words(word: &[Val]) -> (Vec<Val>, Vec<Val>) {
    let n = word.len() / 2;
    if n == 0 {
        return (Vec::new(), Vec::new());
    }
    if n == 1 {
        return (vec![1], vec![0]);
    }
    let m = n as Val;
    let pos = word
        .iter()
        .position(|&v| v == m)
        .expect("largest value present");
    assert_eq!(
        word[pos + 1],
        m,
        "the two copies of the largest value are adjacent"
    );
    let mut parent = Vec::with_capacity(word.len() - 2);
    parent.extend_from_slice(&word[..pos]);
    parent.extend_from_slice(&word[pos + 2..]);
    let (mut pw, mut pc) = phi_words(&parent);

    if pos == 0 {
        pw.insert(0, m);
        pc.insert(0, 0);
        return (pw, pc);
    }
    let ranges = block_ranges(&parent);
    let bi = ranges
        .iter()
        .position(|r| r.contains(&(pos - 1)))
        .expect("every position lies in a block");
    let block_min = parent[ranges[bi].start];
    // 1-indexed position of the first copy of m in the input word
    let m_even = (pos + 1) % 2 == 0;

    if pos < ranges[bi].end && parent[pos] == block_min {
        // before the second copy of the block minimum: marked, at block end
        debug_assert!(m_even, "this case always yields an even indexed entry");
        let end = block_ranges(&pw)[bi].end;
        pw.insert(end, m);
        pc.insert(end, 1);
    } else if pos == ranges[bi].end {
        // at the end of the block: unmarked, at block end
        debug_assert!(!m_even, "this case never yields an even indexed entry");
        let end = block_ranges(&pw)[bi].end;
        pw.insert(end, m);
        pc.insert(end, 0);
    } else {
        // interior: immediately before the entry s, marked iff even indexed
        let s = parent[pos];
        let at = pw.iter().position(|&v| v == s).expect("s present once");
        pw.insert(at, m);
        pc.insert(at, u32::from(m_even));
    }
    (pw, pc)
}

/// Inverse of [`phi`]: locate the largest value, classify which insertion
/// produced it (front, marked at block end, unmarked at block end, interior
/// with the even-position parity resolving the two candidate gaps), remove
/// it and recurse.
pub fn phi_inv(m: &MarkedPerm) -> Result<StirlingPerm, MapError> {
    if m.colors().iter().any(|&c| c > 1) {
        return Err(MapError::InvalidInput(
            "expected a marked permutation (colors 0 and 1 only)".into(),
        ));
    }
    let word = phi_inv_word(m.word(), m.colors())?;
    StirlingPerm::new(word).map_err(MapError::NotInImage)
}

fn phi_inv_word(word: &[Val], colors: &[Val]) -> Result<Vec<Val>, MapError> {
    let n = word.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    if n == 1 {
        return Ok(vec![1, 1]);
    }
    let mv = n as Val;
    let i = word
        .iter()
        .position(|&v| v == mv)
        .expect("largest value present");
    let marked = colors[i] != 0;

    let mut pword = Vec::with_capacity(n - 1);
    pword.extend_from_slice(&word[..i]);
    pword.extend_from_slice(&word[i + 1..]);
    let mut pcolors = Vec::with_capacity(n - 1);
    pcolors.extend_from_slice(&colors[..i]);
    pcolors.extend_from_slice(&colors[i + 1..]);

    let parent = phi_inv_word(&pword, &pcolors)?;

    if i == 0 {
        // front insertion; the leading largest value is a left-to-right
        // minimum, hence unmarked by the class invariant
        let mut out = vec![mv, mv];
        out.extend_from_slice(&parent);
        return Ok(out);
    }

    let ranges = block_ranges(&pword);
    let bi = ranges
        .iter()
        .position(|r| r.contains(&(i - 1)))
        .expect("every position lies in a block");
    let block_min = pword[ranges[bi].start];
    let at_block_end = i == ranges[bi].end;

    let insert_pair = |gap: usize| -> Vec<Val> {
        let mut out = parent.clone();
        out.insert(gap, mv);
        out.insert(gap, mv);
        out
    };

    if at_block_end && marked {
        // inverse of: before the second copy of the block minimum
        let first = parent
            .iter()
            .position(|&v| v == block_min)
            .expect("block minimum present");
        let second = first
            + 1
            + parent[first + 1..]
                .iter()
                .position(|&v| v == block_min)
                .expect("two copies");
        return Ok(insert_pair(second));
    }
    if at_block_end {
        // inverse of: at the end of the block
        let end = block_ranges(&parent)[bi].end;
        return Ok(insert_pair(end));
    }
    // interior: the inserted value sat immediately before s; of the two
    // copies of s the gap parities differ, so the mark picks exactly one
    let s = pword[i];
    let first = parent.iter().position(|&v| v == s).expect("s present");
    let second = first
        + 1
        + parent[first + 1..]
            .iter()
            .position(|&v| v == s)
            .expect("two copies");
    for gap in [first, second] {
        let even = (gap + 1) % 2 == 0;
        if even == marked {
            return Ok(insert_pair(gap));
        }
    }
    Err(MapError::NotInImage(format!(
        "no gap parity matches the mark of {mv}"
    )))
}

// ---------------------------------------------------------------------------
// iota
// ---------------------------------------------------------------------------

/// Toggle the mark of the smallest non-left-to-right minimum. Involution;
/// preserves the ascent set, flips the parity of the number of marks.
pub fn iota(m: &MarkedPerm) -> Result<MarkedPerm, MapError> {
    if m.colors().iter().any(|&c| c > 1) {
        return Err(MapError::InvalidInput(
            "expected a marked permutation (colors 0 and 1 only)".into(),
        ));
    }
    let word = m.word();
    let mut is_min = vec![false; word.len()];
    for &i in &lrmin_positions(word) {
        is_min[i] = true;
    }
    let target = (0..word.len())
        .filter(|&i| !is_min[i])
        .min_by_key(|&i| word[i])
        .ok_or(MapError::FixedClass)?;
    let mut colors = m.colors().to_vec();
    colors[target] = 1 - colors[target];
    Ok(MarkedPerm::new_unchecked(word.to_vec(), colors, 2))
}

// ---------------------------------------------------------------------------
// Trees
// ---------------------------------------------------------------------------

/// Inorder bijection onto bicolored increasing binary trees: the root is the
/// minimum of the word, the prefix builds the left subtree and the suffix
/// the right one; marked letters become black nodes. The leftmost path
/// carries exactly the left-to-right minima.
pub fn tree_of(m: &MarkedPerm) -> BicoloredTree {
    assert!(
        m.colors().iter().all(|&c| c <= 1),
        "trees encode two colors"
    );
    fn build(word: &[Val], colors: &[Val]) -> Option<Box<TreeNode>> {
        if word.is_empty() {
            return None;
        }
        let mi = (0..word.len())
            .min_by_key(|&i| word[i])
            .expect("nonempty word");
        Some(Box::new(TreeNode {
            label: word[mi],
            color: if colors[mi] != 0 {
                Color::Black
            } else {
                Color::White
            },
            left: build(&word[..mi], &colors[..mi]),
            right: build(&word[mi + 1..], &colors[mi + 1..]),
        }))
    }
    BicoloredTree::new_unchecked(build(m.word(), m.colors()))
}

/// Inverse of [`tree_of`]: inorder traversal, black nodes become marks.
pub fn perm_of_tree(t: &BicoloredTree) -> Result<MarkedPerm, MapError> {
    fn walk(node: &TreeNode, word: &mut Vec<Val>, colors: &mut Vec<Val>) {
        if let Some(l) = &node.left {
            walk(l, word, colors);
        }
        word.push(node.label);
        colors.push(u32::from(node.color == Color::Black));
        if let Some(r) = &node.right {
            walk(r, word, colors);
        }
    }
    let mut word = Vec::new();
    let mut colors = Vec::new();
    if let Some(root) = t.root() {
        walk(root, &mut word, &mut colors);
    }
    MarkedPerm::new(word, colors, 2).map_err(MapError::InvalidInput)
}

fn one_child_non_special_labels(t: &BicoloredTree) -> Vec<Val> {
    let specials = t.special_labels();
    let mut out = Vec::new();
    fn walk(node: &TreeNode, specials: &[Val], out: &mut Vec<Val>) {
        let children = usize::from(node.left.is_some()) + usize::from(node.right.is_some());
        if children == 1 && !specials.contains(&node.label) {
            out.push(node.label);
        }
        for c in [&node.left, &node.right].into_iter().flatten() {
            walk(c, specials, out);
        }
    }
    if let Some(root) = t.root() {
        walk(root, &specials, &mut out);
    }
    out
}

/// No non-special node has exactly one child. These are the fixed trees of
/// [`tree_involution`].
pub fn is_complete(t: &BicoloredTree) -> bool {
    one_child_non_special_labels(t).is_empty()
}

/// Among the non-special nodes with exactly one child, take the one with the
/// minimal label and move its whole subtree to the other branch. Involution
/// on the applicable trees; the special-node set is untouched.
pub fn tree_involution(t: &BicoloredTree) -> Result<BicoloredTree, MapError> {
    let target = one_child_non_special_labels(t)
        .into_iter()
        .min()
        .ok_or(MapError::Complete)?;
    fn apply(node: &mut TreeNode, target: Val) {
        if node.label == target {
            std::mem::swap(&mut node.left, &mut node.right);
            return;
        }
        for c in [&mut node.left, &mut node.right].into_iter().flatten() {
            apply(c, target);
        }
    }
    let mut root = t.clone().into_root();
    if let Some(r) = root.as_mut() {
        apply(r, target);
    }
    Ok(BicoloredTree::new_unchecked(root))
}

// ---------------------------------------------------------------------------
// psi
// ---------------------------------------------------------------------------

/// Involution on permutations: cut into rl-blocks, rotate each block
/// cyclically so its maximum comes last, order the blocks by decreasing
/// maxima, then complement every value (`v -> n+1-v`). Exchanges `asc+1`
/// with `desrlmin` and preserves the number of right-to-left minima.
pub fn psi(p: &Perm) -> Perm {
    let word = p.word();
    let n = word.len() as Val;
    let mut blocks: Vec<Vec<Val>> = rl_block_ranges(word)
        .into_iter()
        .map(|r| word[r].to_vec())
        .collect();
    for b in &mut blocks {
        let len = b.len();
        let mi = (0..len).max_by_key(|&i| b[i]).expect("nonempty block");
        b.rotate_left((mi + 1) % len);
    }
    blocks.sort_by(|a, b| b.last().cmp(&a.last()));
    let out: Vec<Val> = blocks.into_iter().flatten().map(|v| n + 1 - v).collect();
    Perm::new_unchecked(out)
}

// ---------------------------------------------------------------------------
// Cycle form and matchings
// ---------------------------------------------------------------------------

/// The left-to-right-minimum blocks reinterpreted as cycles, each entry with
/// its color. Cycle heads are the minima and therefore unmarked.
pub fn foata_cycles(m: &MarkedPerm) -> Vec<Vec<(Val, Val)>> {
    block_ranges(m.word())
        .into_iter()
        .map(|r| r.map(|i| (m.word()[i], m.colors()[i])).collect::<Vec<_>>())
        .collect()
}

/// π_1 < π_2 > π_3 < ... (strictly, adjacent entries of a permutation are
/// never equal).
pub fn is_reverse_alternating(word: &[Val]) -> bool {
    (0..word.len().saturating_sub(1)).all(|i| {
        if i % 2 == 0 {
            word[i] < word[i + 1]
        } else {
            word[i] > word[i + 1]
        }
    })
}

/// Encode a reverse-alternating marked permutation with complete tree as a
/// perfect matching of `[2n]` under the symbol order
/// `1' < 1 < 2' < 2 < ...` (primed symbol of `v` is `2v-1`, plain is `2v`):
/// each cycle entry contributes an incoming symbol (primed when marked) and
/// an outgoing symbol (plain when marked), and consecutive cycle entries are
/// paired cyclically. The result satisfies the ascending/descending pairing
/// rule of the h-matchings.
pub fn matching_of(m: &MarkedPerm) -> Result<Matching, MapError> {
    if m.colors().iter().any(|&c| c > 1) {
        return Err(MapError::InvalidInput(
            "expected a marked permutation (colors 0 and 1 only)".into(),
        ));
    }
    if m.n() % 2 != 0 {
        return Err(MapError::InvalidInput("length must be even".into()));
    }
    if !is_reverse_alternating(m.word()) {
        return Err(MapError::InvalidInput(
            "word is not reverse alternating".into(),
        ));
    }
    if !is_complete(&tree_of(m)) {
        return Err(MapError::InvalidInput("tree is not complete".into()));
    }
    let incoming = |v: Val, marked: bool| if marked { 2 * v - 1 } else { 2 * v };
    let outgoing = |v: Val, marked: bool| if marked { 2 * v } else { 2 * v - 1 };
    let mut pairs = Vec::with_capacity(m.n());
    for cycle in foata_cycles(m) {
        for j in 0..cycle.len() {
            let (v, vc) = cycle[j];
            let (w, wc) = cycle[(j + 1) % cycle.len()];
            pairs.push((outgoing(v, vc != 0), incoming(w, wc != 0)));
        }
    }
    let matching = Matching::from_pairs(pairs).map_err(MapError::NotInImage)?;
    debug_assert!(matching.is_h_matching());
    Ok(matching)
}
