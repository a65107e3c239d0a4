//! Statistics on permutations, marked permutations and Stirling permutations
//! in one-line and cycle form.
//!
//! Set-valued statistics return sets of entry VALUES (the ascent set of
//! `53412` is `{2,4}`), not position sets. [`StatReport`] carries the sets
//! together with their cardinalities plus the purely numeric statistics
//! (`exc`, `cyc`, `fix`, `bk2`, `cap`).
//!
//! The free functions (`asc_count`, `even_count`, ...) are allocation-light
//! count-only paths used by the exhaustive sweeps; they are checked against
//! the set-building versions on full small-order enumerations.

use crate::objects::{
    block_ranges, lrmin_positions, rlmin_positions, CycleStirlingPerm, MarkedPerm, StirlingPerm,
    Val,
};
use std::collections::BTreeMap;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum StatName {
    Asc,
    Des,
    Lrmin,
    Rlmin,
    Mark,
    Desrlmin,
    Exc,
    Cyc,
    Fix,
    Ap,
    Even,
    Odd,
    Bk2,
    Cap,
}

impl StatName {
    pub fn name(self) -> &'static str {
        match self {
            StatName::Asc => "asc",
            StatName::Des => "des",
            StatName::Lrmin => "lrmin",
            StatName::Rlmin => "rlmin",
            StatName::Mark => "mark",
            StatName::Desrlmin => "desrlmin",
            StatName::Exc => "exc",
            StatName::Cyc => "cyc",
            StatName::Fix => "fix",
            StatName::Ap => "ap",
            StatName::Even => "even",
            StatName::Odd => "odd",
            StatName::Bk2 => "bk2",
            StatName::Cap => "cap",
        }
    }

    pub fn from_name(s: &str) -> Option<StatName> {
        use StatName::*;
        [
            Asc, Des, Lrmin, Rlmin, Mark, Desrlmin, Exc, Cyc, Fix, Ap, Even, Odd, Bk2, Cap,
        ]
        .into_iter()
        .find(|x| x.name() == s)
    }
}

/// Statistic values of one object: value sets for the set-valued statistics
/// and counts for all of them. For a set-valued statistic the count is the
/// set's cardinality by construction.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct StatReport {
    sets: BTreeMap<StatName, Vec<Val>>,
    counts: BTreeMap<StatName, usize>,
}

impl StatReport {
    fn put_set(&mut self, s: StatName, mut values: Vec<Val>) {
        values.sort_unstable();
        values.dedup();
        self.counts.insert(s, values.len());
        self.sets.insert(s, values);
    }

    fn put_count(&mut self, s: StatName, c: usize) {
        self.counts.insert(s, c);
    }

    /// Sorted value set, for set-valued statistics.
    pub fn set(&self, s: StatName) -> Option<&[Val]> {
        self.sets.get(&s).map(Vec::as_slice)
    }

    pub fn count(&self, s: StatName) -> Option<usize> {
        self.counts.get(&s).copied()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        for (&s, &c) in &self.counts {
            let mut entry = serde_json::Map::new();
            if let Some(set) = self.sets.get(&s) {
                entry.insert("set".into(), serde_json::json!(set));
            }
            entry.insert("count".into(), serde_json::json!(c));
            map.insert(s.name().into(), serde_json::Value::Object(entry));
        }
        serde_json::Value::Object(map)
    }
}

// ---------------------------------------------------------------------------
// Permutations and marked permutations
// ---------------------------------------------------------------------------

/// Statistics of a (marked) permutation. `asc`, `des`, `lrmin`, `rlmin` and
/// `desrlmin` are color-blind; `mark` counts entries of nonzero color; `fix`
/// is the number of blocks of size 1.
pub fn perm_stats(m: &MarkedPerm) -> StatReport {
    let word = m.word();
    let mut report = StatReport::default();

    let asc: Vec<Val> = (1..word.len())
        .filter(|&i| word[i] > word[i - 1])
        .map(|i| word[i])
        .collect();
    let des: Vec<Val> = (1..word.len())
        .filter(|&i| word[i] < word[i - 1])
        .map(|i| word[i])
        .collect();
    let lrmin: Vec<Val> = lrmin_positions(word).iter().map(|&i| word[i]).collect();
    let rlmin: Vec<Val> = rlmin_positions(word).iter().map(|&i| word[i]).collect();
    let mark: Vec<Val> = (0..word.len())
        .filter(|&i| m.is_marked(i))
        .map(|i| word[i])
        .collect();
    let mut desrlmin = des.clone();
    desrlmin.extend_from_slice(&rlmin);

    report.put_set(StatName::Asc, asc);
    report.put_set(StatName::Des, des);
    report.put_set(StatName::Lrmin, lrmin);
    report.put_set(StatName::Rlmin, rlmin);
    report.put_set(StatName::Mark, mark);
    report.put_set(StatName::Desrlmin, desrlmin);
    report.put_count(StatName::Exc, exc_count(word));
    report.put_count(StatName::Cyc, cyc_count(word));
    report.put_count(StatName::Fix, fix_blocks_count(word));
    report
}

/// Statistics of a Stirling permutation: ascent plateaux, even/odd indexed
/// entries (parity of the first copy's 1-indexed position), minima sets and
/// the number of length-2 blocks.
pub fn stirling_stats(s: &StirlingPerm) -> StatReport {
    let word = s.word();
    let n = s.n() as Val;
    let mut report = StatReport::default();

    let ap: Vec<Val> = (1..word.len().saturating_sub(1))
        .filter(|&i| word[i - 1] < word[i] && word[i] == word[i + 1])
        .map(|i| word[i])
        .collect();
    let mut seen = vec![false; n as usize + 1];
    let mut even = Vec::new();
    let mut odd = Vec::new();
    for (i, &v) in word.iter().enumerate() {
        if !seen[v as usize] {
            seen[v as usize] = true;
            if (i + 1) % 2 == 0 {
                even.push(v);
            } else {
                odd.push(v);
            }
        }
    }
    let lrmin: Vec<Val> = lrmin_positions(word).iter().map(|&i| word[i]).collect();
    let rlmin: Vec<Val> = rlmin_positions(word).iter().map(|&i| word[i]).collect();

    report.put_set(StatName::Ap, ap);
    report.put_set(StatName::Even, even);
    report.put_set(StatName::Odd, odd);
    report.put_set(StatName::Lrmin, lrmin);
    report.put_set(StatName::Rlmin, rlmin);
    report.put_count(StatName::Bk2, bk2_count(word));
    report
}

/// Statistics of a Stirling permutation of the second kind: cycle ascent
/// plateaux, cycle count and fixed points `(k k)`.
pub fn cycle_stirling_stats(c: &CycleStirlingPerm) -> StatReport {
    let mut report = StatReport::default();
    report.put_count(StatName::Cap, cap_count(c.cycles()));
    report.put_count(StatName::Cyc, c.cycles().len());
    report.put_count(
        StatName::Fix,
        c.cycles().iter().filter(|cy| cy.len() == 2).count(),
    );
    report
}

// ---------------------------------------------------------------------------
// Count-only fast paths
// ---------------------------------------------------------------------------

pub fn asc_count(word: &[Val]) -> usize {
    (1..word.len()).filter(|&i| word[i] > word[i - 1]).count()
}

pub fn des_count(word: &[Val]) -> usize {
    (1..word.len()).filter(|&i| word[i] < word[i - 1]).count()
}

pub fn lrmin_count(word: &[Val]) -> usize {
    let mut min = Val::MAX;
    let mut cnt = 0;
    for &v in word {
        if v < min {
            min = v;
            cnt += 1;
        }
    }
    cnt
}

pub fn rlmin_count(word: &[Val]) -> usize {
    let mut min = Val::MAX;
    let mut cnt = 0;
    for &v in word.iter().rev() {
        if v < min {
            min = v;
            cnt += 1;
        }
    }
    cnt
}

pub fn mark_count(colors: &[Val]) -> usize {
    colors.iter().filter(|&&c| c != 0).count()
}

/// Entries that are descent bottoms or right-to-left minima, the union
/// counted once. Each value of a permutation occupies one position, so the
/// value union equals the position union.
pub fn desrlmin_count(word: &[Val]) -> usize {
    let mut min = Val::MAX;
    let mut cnt = 0;
    for i in (0..word.len()).rev() {
        let is_rlmin = word[i] < min;
        if is_rlmin {
            min = word[i];
        }
        if is_rlmin || (i > 0 && word[i - 1] > word[i]) {
            cnt += 1;
        }
    }
    cnt
}

/// Excedances: positions `i` with `w_i > i` (1-indexed).
pub fn exc_count(word: &[Val]) -> usize {
    word.iter()
        .enumerate()
        .filter(|&(i, &v)| v as usize > i + 1)
        .count()
}

/// Cycles of the permutation `i -> w_i`.
pub fn cyc_count(word: &[Val]) -> usize {
    let mut visited = vec![false; word.len()];
    let mut cycles = 0;
    for start in 0..word.len() {
        if visited[start] {
            continue;
        }
        cycles += 1;
        let mut i = start;
        while !visited[i] {
            visited[i] = true;
            i = word[i] as usize - 1;
        }
    }
    cycles
}

/// Number of blocks of size 1.
pub fn fix_blocks_count(word: &[Val]) -> usize {
    block_ranges(word).iter().filter(|r| r.len() == 1).count()
}

pub fn ap_count(word: &[Val]) -> usize {
    if word.len() < 3 {
        return 0;
    }
    (1..word.len() - 1)
        .filter(|&i| word[i - 1] < word[i] && word[i] == word[i + 1])
        .count()
}

/// Values whose first copy sits at an even 1-indexed position.
pub fn even_count(word: &[Val]) -> usize {
    let n = word.len() / 2;
    let mut seen = vec![false; n + 1];
    let mut cnt = 0;
    for (i, &v) in word.iter().enumerate() {
        if !seen[v as usize] {
            seen[v as usize] = true;
            if (i + 1) % 2 == 0 {
                cnt += 1;
            }
        }
    }
    cnt
}

pub fn odd_count(word: &[Val]) -> usize {
    word.len() / 2 - even_count(word)
}

/// Number of blocks of length exactly 2.
pub fn bk2_count(word: &[Val]) -> usize {
    let mut min = Val::MAX;
    let mut cnt = 0;
    let mut block_len = 0;
    for &v in word {
        if v < min {
            min = v;
            if block_len == 2 {
                cnt += 1;
            }
            block_len = 0;
        }
        block_len += 1;
    }
    if block_len == 2 {
        cnt += 1;
    }
    cnt
}

/// Cycle ascent plateaux summed over the cycle words, interior positions
/// only (no wraparound).
pub fn cap_count(cycles: &[Vec<Val>]) -> usize {
    cycles.iter().map(|c| ap_count(c)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objects::Perm;

    fn marked(word: Vec<Val>, marked_vals: &[Val]) -> MarkedPerm {
        let colors = word
            .iter()
            .map(|v| marked_vals.contains(v) as Val)
            .collect();
        MarkedPerm::new(word, colors, 2).unwrap()
    }

    #[test]
    fn asc_set_of_53412() {
        let m = MarkedPerm::from_perm(&Perm::new(vec![5, 3, 4, 1, 2]).unwrap(), 1);
        let r = perm_stats(&m);
        assert_eq!(r.set(StatName::Asc).unwrap(), &[2, 4]);
        assert_eq!(r.count(StatName::Asc), Some(2));
    }

    #[test]
    fn marked_example_stats() {
        // 3 5:1 2 1 4:1 6 7 has asc 4, mark 2, lrmin 3
        let m = marked(vec![3, 5, 2, 1, 4, 6, 7], &[5, 4]);
        let r = perm_stats(&m);
        assert_eq!(r.count(StatName::Asc), Some(4));
        assert_eq!(r.count(StatName::Mark), Some(2));
        assert_eq!(r.count(StatName::Lrmin), Some(3));
        assert_eq!(r.set(StatName::Lrmin).unwrap(), &[1, 2, 3]);
    }

    #[test]
    fn desrlmin_example() {
        let w = [3, 1, 5, 7, 6, 2, 4, 9, 8];
        assert_eq!(desrlmin_count(&w), 5);
        let m = MarkedPerm::from_perm(&Perm::new(w.to_vec()).unwrap(), 1);
        let r = perm_stats(&m);
        assert_eq!(r.count(StatName::Desrlmin), Some(5));
        assert_eq!(r.set(StatName::Desrlmin).unwrap(), &[1, 2, 4, 6, 8]);
    }

    #[test]
    fn stirling_ap_even_odd() {
        let s = StirlingPerm::new(vec![2, 2, 1, 1, 3, 3]).unwrap();
        let r = stirling_stats(&s);
        assert_eq!(r.set(StatName::Ap).unwrap(), &[3]);

        let s = StirlingPerm::new(vec![2, 2, 1, 3, 3, 1]).unwrap();
        let r = stirling_stats(&s);
        assert_eq!(r.set(StatName::Even).unwrap(), &[3]);
        assert_eq!(r.set(StatName::Odd).unwrap(), &[1, 2]);
        assert_eq!(r.count(StatName::Even), Some(1));
        assert_eq!(r.count(StatName::Odd), Some(2));

        let s = StirlingPerm::new(vec![2, 2, 3, 3, 1, 1]).unwrap();
        let r = stirling_stats(&s);
        assert_eq!(r.count(StatName::Lrmin), Some(2));
        assert_eq!(r.count(StatName::Rlmin), Some(1));
    }

    #[test]
    fn cycle_stats_examples() {
        let c = CycleStirlingPerm::new(vec![vec![1, 1], vec![2, 2]]).unwrap();
        let r = cycle_stirling_stats(&c);
        assert_eq!(r.count(StatName::Cyc), Some(2));
        assert_eq!(r.count(StatName::Fix), Some(2));
        assert_eq!(r.count(StatName::Cap), Some(0));

        let c = CycleStirlingPerm::new(vec![vec![1, 2, 2, 1]]).unwrap();
        let r = cycle_stirling_stats(&c);
        assert_eq!(r.count(StatName::Cyc), Some(1));
        assert_eq!(r.count(StatName::Fix), Some(0));
        assert_eq!(r.count(StatName::Cap), Some(1));

        // interior plateau at the third position
        let c = CycleStirlingPerm::new(vec![vec![1, 1, 2, 2]]).unwrap();
        let r = cycle_stirling_stats(&c);
        assert_eq!(r.count(StatName::Cap), Some(1));
    }

    #[test]
    fn asc_plus_des_is_n_minus_1() {
        for w in [
            vec![1u32, 2, 3, 4],
            vec![4, 3, 2, 1],
            vec![2, 4, 1, 3],
            vec![3, 1, 4, 2],
        ] {
            assert_eq!(asc_count(&w) + des_count(&w), w.len() - 1);
        }
    }

    #[test]
    fn even_plus_odd_is_n() {
        let w = [2, 2, 1, 3, 3, 1];
        assert_eq!(even_count(&w) + odd_count(&w), 3);
    }

    #[test]
    fn bk2_matches_blocks() {
        let w = [2, 2, 1, 1];
        assert_eq!(bk2_count(&w), 2);
        let w = [1, 2, 2, 1, 3, 3];
        assert_eq!(bk2_count(&w), 0);
        let w = [2, 2, 1, 3, 3, 1];
        assert_eq!(bk2_count(&w), 1);
    }

    #[test]
    fn json_shape() {
        let m = marked(vec![1, 2], &[2]);
        let j = perm_stats(&m).to_json();
        assert_eq!(j["asc"]["count"], 1);
        assert_eq!(j["asc"]["set"], serde_json::json!([2]));
        assert_eq!(j["exc"]["count"], 0);
        assert_eq!(j["cyc"]["count"], 2);
        assert!(j["exc"].get("set").is_none());
    }
}
