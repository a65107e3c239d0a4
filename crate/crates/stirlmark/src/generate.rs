//! Exhaustive, deterministically ordered generators for every object class.
//!
//! Every generator is a restartable iterator with a documented order, so two
//! runs can be zipped in tests. The expensive classes expose a prefix hook
//! (`gen_stirling_prefixed`) that enumerates only the objects extending a
//! given initial run of insertion choices, which is enough to shard a full
//! sweep across workers and recombine by pure polynomial sums.
//!
//! Orders:
//!
//! - permutations: lexicographic;
//! - marked permutations: by underlying permutation, then color vectors as a
//!   base-`r` odometer over the colorable (non-minimum) positions, leftmost
//!   digit most significant;
//! - Stirling permutations: by the insertion-choice vector `(g_2,...,g_n)`,
//!   lexicographically, where `g_m` is the 0-based gap receiving `mm` when
//!   growing from the word on `m-1` values;
//! - matchings: by the partner-choice vector (partner of the smallest free
//!   element first);
//! - cycle forms: by restricted-growth-string order on the support
//!   partition, then per-cycle word choices;
//! - trees: the image order of the marked permutations under [`maps::tree_of`].

use crate::maps;
use crate::objects::{
    lrmin_positions, BicoloredTree, CycleStirlingPerm, MarkedPerm, Matching, Perm, StirlingPerm,
    Val,
};
use crate::stats::bk2_count;

/// `(2n-1)!! = 1*3*5*...*(2n-1)`, the common cardinality of the families of
/// order `n`.
pub fn odd_double_factorial(n: usize) -> u64 {
    (0..n).map(|k| 2 * k as u64 + 1).product()
}

// ---------------------------------------------------------------------------
// Permutations
// ---------------------------------------------------------------------------

pub struct Perms {
    next: Option<Vec<Val>>,
}

/// All `n!` permutations of `[n]` in lexicographic order.
pub fn gen_perms(n: usize) -> Perms {
    Perms {
        next: Some((1..=n as Val).collect()),
    }
}

fn next_permutation(w: &mut [Val]) -> bool {
    if w.len() < 2 {
        return false;
    }
    let mut i = w.len() - 1;
    while i > 0 && w[i - 1] >= w[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = w.len() - 1;
    while w[j] <= w[i - 1] {
        j -= 1;
    }
    w.swap(i - 1, j);
    w[i..].reverse();
    true
}

impl Iterator for Perms {
    type Item = Perm;

    fn next(&mut self) -> Option<Perm> {
        let current = self.next.take()?;
        let mut successor = current.clone();
        if next_permutation(&mut successor) {
            self.next = Some(successor);
        }
        Some(Perm::new_unchecked(current))
    }
}

// ---------------------------------------------------------------------------
// Marked / colored permutations
// ---------------------------------------------------------------------------

pub struct MarkedPerms {
    perms: Perms,
    r: u32,
    word: Option<Vec<Val>>,
    free: Vec<usize>,
    colors: Vec<Val>,
}

/// All `r`-colored marked permutations of `[n]`: every permutation combined
/// with every coloring of its non-left-to-right-minimum positions by
/// `0..r`, minima forced to color 0. The count is
/// `sum_{perm} r^(n - lrmin)`.
pub fn gen_marked(n: usize, r: u32) -> MarkedPerms {
    assert!(r >= 1, "at least one color");
    let mut perms = gen_perms(n);
    let word = perms.next().map(|p| p.word().to_vec());
    let free = word.as_deref().map(free_positions).unwrap_or_default();
    MarkedPerms {
        perms,
        r,
        colors: vec![0; word.as_deref().map_or(0, <[Val]>::len)],
        word,
        free,
    }
}

fn free_positions(word: &[Val]) -> Vec<usize> {
    let mins = lrmin_positions(word);
    let mut is_min = vec![false; word.len()];
    for &i in &mins {
        is_min[i] = true;
    }
    (0..word.len()).filter(|&i| !is_min[i]).collect()
}

impl Iterator for MarkedPerms {
    type Item = MarkedPerm;

    fn next(&mut self) -> Option<MarkedPerm> {
        let word = self.word.as_ref()?;
        let item = MarkedPerm::new_unchecked(word.clone(), self.colors.clone(), self.r);
        // advance the color odometer, rightmost digit fastest
        let mut k = self.free.len();
        loop {
            if k == 0 {
                // colors exhausted for this word: move to the next permutation
                match self.perms.next() {
                    Some(p) => {
                        let w = p.word().to_vec();
                        self.free = free_positions(&w);
                        self.colors = vec![0; w.len()];
                        self.word = Some(w);
                    }
                    None => self.word = None,
                }
                break;
            }
            k -= 1;
            let pos = self.free[k];
            if self.colors[pos] + 1 < self.r {
                self.colors[pos] += 1;
                for &p in &self.free[k + 1..] {
                    self.colors[p] = 0;
                }
                break;
            }
        }
        Some(item)
    }
}

// ---------------------------------------------------------------------------
// Stirling permutations
// ---------------------------------------------------------------------------

pub struct StirlingPerms {
    n: usize,
    /// choices[i] is the gap receiving the pair of value i+2; gap g of a
    /// word of length L means insertion before position g, 0 <= g <= L.
    choices: Option<Vec<usize>>,
    /// leading choices that stay fixed (sharding hook)
    fixed: usize,
}

/// All `(2n-1)!!` Stirling permutations of order `n`, generated by the
/// insertion scheme: grow from `11` by placing `mm` into one of the `2m-1`
/// gaps, choice vectors in lexicographic order.
pub fn gen_stirling(n: usize) -> StirlingPerms {
    StirlingPerms {
        n,
        choices: Some(vec![0; n.saturating_sub(1)]),
        fixed: 0,
    }
}

/// Only the Stirling permutations whose first insertion choices equal
/// `prefix` (`prefix[i]` is the gap for value `i+2`, bounded by `2i+2`).
pub fn gen_stirling_prefixed(n: usize, prefix: &[usize]) -> StirlingPerms {
    assert!(n >= 1, "prefixed generation needs n >= 1");
    assert!(prefix.len() < n, "prefix longer than the choice vector");
    for (i, &g) in prefix.iter().enumerate() {
        assert!(g <= 2 * i + 2, "gap {g} out of range for value {}", i + 2);
    }
    let mut choices = vec![0; n - 1];
    choices[..prefix.len()].copy_from_slice(prefix);
    StirlingPerms {
        n,
        choices: Some(choices),
        fixed: prefix.len(),
    }
}

fn build_stirling_word(n: usize, choices: &[usize]) -> Vec<Val> {
    if n == 0 {
        return Vec::new();
    }
    let mut word = Vec::with_capacity(2 * n);
    word.extend_from_slice(&[1, 1]);
    for (i, &g) in choices.iter().enumerate() {
        let m = (i + 2) as Val;
        word.insert(g, m);
        word.insert(g, m);
    }
    word
}

impl Iterator for StirlingPerms {
    type Item = StirlingPerm;

    fn next(&mut self) -> Option<StirlingPerm> {
        let choices = self.choices.as_mut()?;
        let word = build_stirling_word(self.n, choices);
        // advance: digit i ranges over 0..=2i+2
        let mut k = choices.len();
        loop {
            if k == self.fixed {
                self.choices = None;
                break;
            }
            k -= 1;
            if choices[k] < 2 * k + 2 {
                choices[k] += 1;
                for g in &mut choices[k + 1..] {
                    *g = 0;
                }
                break;
            }
        }
        Some(StirlingPerm::new_unchecked(word))
    }
}

/// Stirling permutations without length-2 blocks.
pub fn gen_stirling_derangements(n: usize) -> impl Iterator<Item = StirlingPerm> {
    gen_stirling(n).filter(|s| bk2_count(s.word()) == 0)
}

// ---------------------------------------------------------------------------
// Matchings
// ---------------------------------------------------------------------------

pub struct Matchings {
    n: usize,
    /// choices[k] indexes the partner of the smallest free element at step k,
    /// among the 2(n-k)-1 remaining larger elements.
    choices: Option<Vec<usize>>,
}

/// All `(2n-1)!!` perfect matchings of `[2n]` in standard form.
pub fn gen_matchings(n: usize) -> Matchings {
    Matchings {
        n,
        choices: Some(vec![0; n]),
    }
}

impl Iterator for Matchings {
    type Item = Matching;

    fn next(&mut self) -> Option<Matching> {
        let choices = self.choices.as_mut()?;
        let n = self.n;
        let mut free: Vec<Val> = (1..=2 * n as Val).collect();
        let mut pairs = Vec::with_capacity(n);
        for &c in choices.iter() {
            let i = free[0];
            let j = free[1 + c];
            pairs.push((i, j));
            free.remove(1 + c);
            free.remove(0);
        }
        // digit k ranges over 0..2(n-k)-1
        let mut k = choices.len();
        loop {
            if k == 0 {
                self.choices = None;
                break;
            }
            k -= 1;
            if choices[k] + 1 < 2 * (n - k) - 1 {
                choices[k] += 1;
                for c in &mut choices[k + 1..] {
                    *c = 0;
                }
                break;
            }
        }
        Some(Matching::new_unchecked(pairs))
    }
}

/// Matchings of `[4k]` where `2i-1` and `2i` are both ascending or both
/// descending for every `i`.
pub fn gen_h_matchings(k: usize) -> impl Iterator<Item = Matching> {
    gen_matchings(2 * k).filter(Matching::is_h_matching)
}

// ---------------------------------------------------------------------------
// Stirling permutations of the second kind
// ---------------------------------------------------------------------------

/// Flat storage for the cycle words of one size: all Stirling words of order
/// `k` that begin with 1, i.e. the reductions of admissible cycle words.
struct WordList {
    flat: Vec<Val>,
    width: usize,
    len: usize,
}

impl WordList {
    fn build(k: usize) -> WordList {
        let width = 2 * k;
        let mut flat = Vec::new();
        let mut len = 0;
        for s in gen_stirling(k) {
            let w = s.word();
            if w.first() == Some(&1) {
                flat.extend_from_slice(w);
                len += 1;
            }
        }
        WordList { flat, width, len }
    }

    fn get(&self, i: usize) -> &[Val] {
        &self.flat[i * self.width..(i + 1) * self.width]
    }
}

pub struct CycleStirlings {
    n: usize,
    /// restricted growth string encoding the support partition
    rgs: Option<Vec<usize>>,
    /// sorted supports of the current partition, ordered by minima
    supports: Vec<Vec<Val>>,
    /// word choice per support
    idx: Vec<usize>,
    /// canonical cycle words per size, built on demand
    words: Vec<Option<WordList>>,
}

/// All `(2n-1)!!` Stirling permutations of the second kind of order `n` in
/// standard cycle form: every set partition of `[n]` into supports, each
/// support filled with every cycle word that starts at its minimum and
/// reduces to a Stirling permutation.
pub fn gen_cycle_stirling(n: usize) -> CycleStirlings {
    let mut g = CycleStirlings {
        n,
        rgs: Some(vec![0; n]),
        supports: Vec::new(),
        idx: Vec::new(),
        words: (0..=n).map(|_| None).collect(),
    };
    g.load_partition();
    g
}

impl CycleStirlings {
    fn load_partition(&mut self) {
        let Some(rgs) = &self.rgs else {
            return;
        };
        let parts = rgs.iter().max().map_or(0, |&m| m + 1);
        let mut supports = vec![Vec::new(); parts];
        for (i, &b) in rgs.iter().enumerate() {
            supports[b].push(i as Val + 1);
        }
        // rgs blocks are indexed by first appearance, so minima increase
        self.idx = vec![0; supports.len()];
        self.supports = supports;
        for s in &self.supports {
            let k = s.len();
            if self.words[k].is_none() {
                self.words[k] = Some(WordList::build(k));
            }
        }
    }

    fn advance_rgs(&mut self) {
        let Some(rgs) = self.rgs.as_mut() else {
            return;
        };
        let n = rgs.len();
        let mut i = n;
        loop {
            if i <= 1 {
                self.rgs = None;
                return;
            }
            i -= 1;
            let max_prefix = rgs[..i].iter().copied().max().unwrap_or(0);
            if rgs[i] <= max_prefix {
                rgs[i] += 1;
                for j in i + 1..n {
                    rgs[j] = 0;
                }
                self.load_partition();
                return;
            }
        }
    }
}

impl Iterator for CycleStirlings {
    type Item = CycleStirlingPerm;

    fn next(&mut self) -> Option<CycleStirlingPerm> {
        self.rgs.as_ref()?;
        // n = 0: single empty object
        if self.n == 0 {
            self.rgs = None;
            return Some(CycleStirlingPerm::new_unchecked(Vec::new()));
        }
        let cycles: Vec<Vec<Val>> = self
            .supports
            .iter()
            .zip(&self.idx)
            .map(|(support, &i)| {
                let k = support.len();
                let canon = self.words[k].as_ref().expect("word list built");
                canon
                    .get(i)
                    .iter()
                    .map(|&v| support[v as usize - 1])
                    .collect()
            })
            .collect();
        // advance the per-cycle word odometer, last cycle fastest
        let mut k = self.idx.len();
        loop {
            if k == 0 {
                self.advance_rgs();
                break;
            }
            k -= 1;
            let size = self.supports[k].len();
            let limit = self.words[size].as_ref().expect("word list built").len;
            if self.idx[k] + 1 < limit {
                self.idx[k] += 1;
                for x in &mut self.idx[k + 1..] {
                    *x = 0;
                }
                break;
            }
        }
        Some(CycleStirlingPerm::new_unchecked(cycles))
    }
}

// ---------------------------------------------------------------------------
// Trees
// ---------------------------------------------------------------------------

/// All `(2n-1)!!` bicolored increasing binary trees on `n` nodes, as the
/// image of the marked permutations under the inorder bijection.
pub fn gen_trees(n: usize) -> impl Iterator<Item = BicoloredTree> {
    gen_marked(n, 2).map(|m| maps::tree_of(&m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn perm_counts_and_order() {
        assert_eq!(gen_perms(3).count(), 6);
        assert_eq!(gen_perms(0).count(), 1);
        let first = gen_perms(3).next().unwrap();
        assert_eq!(first.word(), &[1, 2, 3]);
        let all: Vec<_> = gen_perms(3).collect();
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted, "lexicographic order");
    }

    #[test]
    fn marked_counts() {
        // |marked S_3| = 15, the listed set
        assert_eq!(gen_marked(3, 2).count(), 15);
        assert_eq!(gen_marked(2, 2).count(), 3);
        assert_eq!(gen_marked(2, 1).count(), 2);
        let s2: HashSet<String> = gen_marked(2, 2).map(|m| m.encode_text()).collect();
        let expected: HashSet<String> = ["1 2", "1 2:1", "2 1"]
            .into_iter()
            .map(String::from)
            .collect();
        assert_eq!(s2, expected);
    }

    #[test]
    fn marked_three_is_the_known_fifteen() {
        let got: HashSet<String> = gen_marked(3, 2).map(|m| m.encode_text()).collect();
        let expected: HashSet<String> = [
            "1 2 3",
            "1 3 2",
            "2 1 3",
            "2 3 1",
            "3 1 2",
            "3 2 1",
            "1 2:1 3",
            "1 2 3:1",
            "1 2:1 3:1",
            "1 3:1 2",
            "1 3 2:1",
            "1 3:1 2:1",
            "2 1 3:1",
            "2 3:1 1",
            "3 1 2:1",
        ]
        .into_iter()
        .map(String::from)
        .collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn trees_contain_the_figure_tree() {
        let m = crate::objects::MarkedPerm::decode_text("2 3 1 5:1 4:1 6").unwrap();
        let target = maps::tree_of(&m);
        assert!(gen_trees(6).any(|t| t == target));
    }

    #[test]
    fn marked_count_formula() {
        use crate::stats::lrmin_count;
        for (n, r) in [(4usize, 2u32), (4, 3), (5, 2)] {
            let direct = gen_marked(n, r).count() as u64;
            let weighted: u64 = gen_perms(n)
                .map(|p| (r as u64).pow((n - lrmin_count(p.word())) as u32))
                .sum();
            assert_eq!(direct, weighted);
        }
    }

    #[test]
    fn stirling_small_orders() {
        assert_eq!(gen_stirling(0).count(), 1);
        let q1: Vec<_> = gen_stirling(1).collect();
        assert_eq!(q1.len(), 1);
        assert_eq!(q1[0].word(), &[1, 1]);
        let q2: HashSet<Vec<Val>> = gen_stirling(2).map(|s| s.word().to_vec()).collect();
        let expected: HashSet<Vec<Val>> = [vec![2, 2, 1, 1], vec![1, 2, 2, 1], vec![1, 1, 2, 2]]
            .into_iter()
            .collect();
        assert_eq!(q2, expected);
        assert_eq!(gen_stirling(3).count(), 15);
    }

    #[test]
    fn stirling_insertion_equals_filter() {
        // brute force: all words on the multiset, filtered by validation
        fn brute(n: usize) -> HashSet<Vec<Val>> {
            let mut out = HashSet::new();
            let mut word: Vec<Val> = (1..=n as Val).flat_map(|v| [v, v]).collect();
            word.sort_unstable();
            loop {
                if crate::objects::StirlingPerm::new(word.clone()).is_ok() {
                    out.insert(word.clone());
                }
                if !next_permutation(&mut word) {
                    break;
                }
            }
            out
        }
        for n in 0..=5 {
            let generated: HashSet<Vec<Val>> = gen_stirling(n).map(|s| s.word().to_vec()).collect();
            assert_eq!(generated.len(), odd_double_factorial(n) as usize);
            assert_eq!(generated, brute(n), "n = {n}");
        }
    }

    #[test]
    fn stirling_prefix_shards_partition_the_run() {
        let n = 5;
        let full: Vec<_> = gen_stirling(n).map(|s| s.word().to_vec()).collect();
        let mut sharded = Vec::new();
        for g in 0..=2 {
            sharded.extend(gen_stirling_prefixed(n, &[g]).map(|s| s.word().to_vec()));
        }
        assert_eq!(full, sharded, "shards in gap order concatenate to the run");
    }

    #[test]
    fn derangement_examples() {
        let d2: HashSet<Vec<Val>> = gen_stirling_derangements(2)
            .map(|s| s.word().to_vec())
            .collect();
        let expected: HashSet<Vec<Val>> =
            [vec![1, 1, 2, 2], vec![1, 2, 2, 1]].into_iter().collect();
        assert_eq!(d2, expected);
        assert_eq!(gen_stirling_derangements(1).count(), 0);
        assert_eq!(gen_stirling_derangements(0).count(), 1);
    }

    #[test]
    fn matchings_small() {
        assert_eq!(gen_matchings(2).count(), 3);
        assert_eq!(gen_matchings(0).count(), 1);
        assert_eq!(gen_matchings(4).count(), 105);
        for m in gen_matchings(3) {
            m.validate().unwrap();
        }
    }

    #[test]
    fn h_matchings_k1() {
        let h1: HashSet<String> = gen_h_matchings(1).map(|m| m.encode_text()).collect();
        let expected: HashSet<String> = ["(1 3) (2 4)", "(1 4) (2 3)"]
            .into_iter()
            .map(String::from)
            .collect();
        assert_eq!(h1, expected);
    }

    #[test]
    fn cycle_stirling_small() {
        let c2: HashSet<String> = gen_cycle_stirling(2).map(|c| c.encode_text()).collect();
        let expected: HashSet<String> = ["(1 1) (2 2)", "(1 1 2 2)", "(1 2 2 1)"]
            .into_iter()
            .map(String::from)
            .collect();
        assert_eq!(c2, expected);
        assert_eq!(gen_cycle_stirling(1).count(), 1);
        assert_eq!(gen_cycle_stirling(0).count(), 1);
        assert_eq!(gen_cycle_stirling(3).count(), 15);
        assert_eq!(gen_cycle_stirling(4).count(), 105);
    }

    #[test]
    fn generators_yield_valid_objects_without_duplicates() {
        for n in 0..=4 {
            let perms: Vec<_> = gen_perms(n).collect();
            assert_eq!(perms.iter().collect::<HashSet<_>>().len(), perms.len());
            for p in &perms {
                p.validate().unwrap();
            }
            let marked: Vec<_> = gen_marked(n, 3).collect();
            assert_eq!(marked.iter().collect::<HashSet<_>>().len(), marked.len());
            for m in &marked {
                m.validate().unwrap();
            }
            let stirling: Vec<_> = gen_stirling(n).collect();
            assert_eq!(
                stirling.iter().collect::<HashSet<_>>().len(),
                stirling.len()
            );
            for s in &stirling {
                s.validate().unwrap();
            }
            let cycles: Vec<_> = gen_cycle_stirling(n).collect();
            assert_eq!(cycles.iter().collect::<HashSet<_>>().len(), cycles.len());
            for c in &cycles {
                c.validate().unwrap();
            }
            let matchings: Vec<_> = gen_matchings(n).collect();
            assert_eq!(
                matchings.iter().collect::<HashSet<_>>().len(),
                matchings.len()
            );
            for m in &matchings {
                m.validate().unwrap();
            }
        }
    }

    #[test]
    fn restartable_and_deterministic() {
        let a: Vec<_> = gen_stirling(4).collect();
        let b: Vec<_> = gen_stirling(4).collect();
        assert_eq!(a, b);
        let a: Vec<_> = gen_marked(3, 2).collect();
        let b: Vec<_> = gen_marked(3, 2).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn double_factorial_values() {
        assert_eq!(odd_double_factorial(0), 1);
        assert_eq!(odd_double_factorial(1), 1);
        assert_eq!(odd_double_factorial(2), 3);
        assert_eq!(odd_double_factorial(8), 2_027_025);
    }
}
