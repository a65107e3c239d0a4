//! Combinatorial object classes: validation, structural decompositions and
//! text/JSON encodings.
//!
//! Positions are 1-indexed throughout, matching the parity-sensitive
//! statistics (a value of a Stirling permutation is "even indexed" when its
//! first copy sits at an even 1-indexed position). Color 0 is the reserved
//! white/unmarked color; a marked permutation is the two-color case, where
//! "marked" means color 1.
//!
//! Text formats (the CLI wire format):
//!
//! - words: space-separated values, a colored entry is written `v:c` for
//!   color `c >= 1`, color 0 is omitted (`"2 5 6:1 1 4 3:1"`);
//! - cycle forms and matchings: parenthesized groups (`"(1 2 2 1) (3 3)"`,
//!   `"(1 3) (2 4)"`);
//! - trees: nested `(label color left right)` with `()` for an absent child
//!   and colors `w`/`b`.

use std::collections::BTreeSet;
use std::fmt;

pub type Val = u32;

/// Error from `decode`: token position (0-indexed) and description.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at token {}: {}", self.pos, self.msg)
    }
}

impl std::error::Error for ParseError {}

fn parse_err<T>(pos: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        pos,
        msg: msg.into(),
    })
}

// ---------------------------------------------------------------------------
// Word-level decompositions
// ---------------------------------------------------------------------------

/// Order-isomorphic relabeling onto an initial segment of the positive
/// integers: the i-th smallest distinct value maps to i, equal entries map to
/// equal ranks. `red(33224547) = 22113435`.
pub fn red(word: &[Val]) -> Vec<Val> {
    let distinct: BTreeSet<Val> = word.iter().copied().collect();
    let rank = |v: Val| -> Val { distinct.range(..=v).count() as Val };
    word.iter().map(|&v| rank(v)).collect()
}

/// 0-indexed positions of left-to-right minima (strict running minima,
/// position 0 included).
pub fn lrmin_positions(word: &[Val]) -> Vec<usize> {
    let mut out = Vec::new();
    let mut min = Val::MAX;
    for (i, &v) in word.iter().enumerate() {
        if v < min {
            min = v;
            out.push(i);
        }
    }
    out
}

/// 0-indexed positions of right-to-left minima (last position included).
pub fn rlmin_positions(word: &[Val]) -> Vec<usize> {
    let mut out = Vec::new();
    let mut min = Val::MAX;
    for (i, &v) in word.iter().enumerate().rev() {
        if v < min {
            min = v;
            out.push(i);
        }
    }
    out.reverse();
    out
}

/// Half-open index ranges of the blocks: each block begins at a left-to-right
/// minimum and extends maximally, so a new block starts exactly where the
/// running minimum drops.
pub fn block_ranges(word: &[Val]) -> Vec<std::ops::Range<usize>> {
    let starts = lrmin_positions(word);
    starts
        .iter()
        .enumerate()
        .map(|(k, &s)| {
            let end = starts.get(k + 1).copied().unwrap_or(word.len());
            s..end
        })
        .collect()
}

/// Blocks as owned subwords.
pub fn blocks(word: &[Val]) -> Vec<Vec<Val>> {
    block_ranges(word)
        .into_iter()
        .map(|r| word[r].to_vec())
        .collect()
}

/// Half-open index ranges of the rl-blocks: each block ends at a
/// right-to-left minimum.
pub fn rl_block_ranges(word: &[Val]) -> Vec<std::ops::Range<usize>> {
    let ends = rlmin_positions(word);
    let mut out = Vec::new();
    let mut start = 0;
    for &e in &ends {
        out.push(start..e + 1);
        start = e + 1;
    }
    out
}

/// Rl-blocks as owned subwords.
pub fn rl_blocks(word: &[Val]) -> Vec<Vec<Val>> {
    rl_block_ranges(word)
        .into_iter()
        .map(|r| word[r].to_vec())
        .collect()
}

// ---------------------------------------------------------------------------
// Perm
// ---------------------------------------------------------------------------

/// A permutation of `[n]` in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    word: Vec<Val>,
}

fn validate_perm_word(word: &[Val]) -> Result<(), String> {
    let n = word.len() as Val;
    let mut seen = vec![false; word.len() + 1];
    for (i, &v) in word.iter().enumerate() {
        if v < 1 || v > n {
            return Err(format!(
                "value {v} at position {} is outside 1..={n}",
                i + 1
            ));
        }
        if seen[v as usize] {
            return Err(format!("value {v} repeats at position {}", i + 1));
        }
        seen[v as usize] = true;
    }
    Ok(())
}

impl Perm {
    pub fn new(word: Vec<Val>) -> Result<Perm, String> {
        validate_perm_word(&word)?;
        Ok(Perm { word })
    }

    pub(crate) fn new_unchecked(word: Vec<Val>) -> Perm {
        debug_assert!(validate_perm_word(&word).is_ok());
        Perm { word }
    }

    pub fn identity(n: usize) -> Perm {
        Perm {
            word: (1..=n as Val).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.word.len()
    }

    pub fn word(&self) -> &[Val] {
        &self.word
    }

    pub fn validate(&self) -> Result<(), String> {
        validate_perm_word(&self.word)
    }

    pub fn encode_text(&self) -> String {
        self.word
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn decode_text(s: &str) -> Result<Perm, ParseError> {
        let word = parse_word(s)?;
        for (i, &(_, c)) in word.iter().enumerate() {
            if c != 0 {
                return parse_err(i, "a plain permutation has no colored entries");
            }
        }
        let word: Vec<Val> = word.into_iter().map(|(v, _)| v).collect();
        Perm::new(word).map_err(|msg| ParseError { pos: 0, msg })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "word": self.word })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Perm, ParseError> {
        let word = json_u32_array(v, "word")?;
        Perm::new(word).map_err(|msg| ParseError { pos: 0, msg })
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.encode_text())
    }
}

// ---------------------------------------------------------------------------
// MarkedPerm
// ---------------------------------------------------------------------------

/// A permutation with an `r`-coloring of its entries where every
/// left-to-right minimum carries color 0. With `r = 2` this is a marked
/// permutation (color 1 = marked); `r = 1` is a plain permutation.
///
/// Equality and hashing ignore `r`: the color vector carries all the
/// information, `r` only bounds it (the text encoding does not transport
/// `r`).
#[derive(Clone, Debug)]
pub struct MarkedPerm {
    word: Vec<Val>,
    colors: Vec<Val>,
    r: u32,
}

impl PartialEq for MarkedPerm {
    fn eq(&self, other: &Self) -> bool {
        self.word == other.word && self.colors == other.colors
    }
}

impl Eq for MarkedPerm {}

impl std::hash::Hash for MarkedPerm {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.word.hash(state);
        self.colors.hash(state);
    }
}

fn validate_marked(word: &[Val], colors: &[Val], r: u32) -> Result<(), String> {
    validate_perm_word(word)?;
    if colors.len() != word.len() {
        return Err(format!(
            "{} colors for {} entries",
            colors.len(),
            word.len()
        ));
    }
    if r < 1 {
        return Err("color count r must be at least 1".into());
    }
    for (i, &c) in colors.iter().enumerate() {
        if c >= r {
            return Err(format!(
                "color {c} at position {} exceeds the {r}-color bound",
                i + 1
            ));
        }
    }
    for &i in &lrmin_positions(word) {
        if colors[i] != 0 {
            return Err(format!(
                "{} is a left-to-right minimum and must be unmarked (color 0)",
                word[i]
            ));
        }
    }
    Ok(())
}

impl MarkedPerm {
    pub fn new(word: Vec<Val>, colors: Vec<Val>, r: u32) -> Result<MarkedPerm, String> {
        validate_marked(&word, &colors, r)?;
        Ok(MarkedPerm { word, colors, r })
    }

    pub(crate) fn new_unchecked(word: Vec<Val>, colors: Vec<Val>, r: u32) -> MarkedPerm {
        debug_assert!(validate_marked(&word, &colors, r).is_ok());
        MarkedPerm { word, colors, r }
    }

    /// A plain permutation seen as all-white.
    pub fn from_perm(p: &Perm, r: u32) -> MarkedPerm {
        MarkedPerm {
            colors: vec![0; p.n()],
            word: p.word().to_vec(),
            r,
        }
    }

    pub fn n(&self) -> usize {
        self.word.len()
    }

    pub fn word(&self) -> &[Val] {
        &self.word
    }

    pub fn colors(&self) -> &[Val] {
        &self.colors
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// Same object with the color bound raised to at least `r`.
    pub fn with_r_at_least(&self, r: u32) -> MarkedPerm {
        MarkedPerm {
            word: self.word.clone(),
            colors: self.colors.clone(),
            r: self.r.max(r),
        }
    }

    pub fn underlying(&self) -> Perm {
        Perm::new_unchecked(self.word.clone())
    }

    pub fn is_marked(&self, pos: usize) -> bool {
        self.colors[pos] != 0
    }

    pub fn validate(&self) -> Result<(), String> {
        validate_marked(&self.word, &self.colors, self.r)
    }

    pub fn encode_text(&self) -> String {
        self.word
            .iter()
            .zip(&self.colors)
            .map(|(v, &c)| {
                if c == 0 {
                    v.to_string()
                } else {
                    format!("{v}:{c}")
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Decode; the color bound is inferred as `max(colors) + 1` (at least 1),
    /// since the text format does not carry `r`.
    pub fn decode_text(s: &str) -> Result<MarkedPerm, ParseError> {
        let entries = parse_word(s)?;
        let word: Vec<Val> = entries.iter().map(|&(v, _)| v).collect();
        let colors: Vec<Val> = entries.iter().map(|&(_, c)| c).collect();
        let r = colors.iter().copied().max().unwrap_or(0) + 1;
        MarkedPerm::new(word, colors, r).map_err(|msg| ParseError { pos: 0, msg })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "word": self.word, "colors": self.colors, "r": self.r })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<MarkedPerm, ParseError> {
        let word = json_u32_array(v, "word")?;
        let colors = json_u32_array(v, "colors")?;
        let r = v
            .get("r")
            .and_then(|x| x.as_u64())
            .ok_or_else(|| ParseError {
                pos: 0,
                msg: "missing field r".into(),
            })? as u32;
        MarkedPerm::new(word, colors, r).map_err(|msg| ParseError { pos: 0, msg })
    }
}

impl fmt::Display for MarkedPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.encode_text())
    }
}

// ---------------------------------------------------------------------------
// StirlingPerm
// ---------------------------------------------------------------------------

/// A word on the multiset `{1,1,...,n,n}` where every entry between the two
/// occurrences of `i` exceeds `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StirlingPerm {
    word: Vec<Val>,
}

pub(crate) fn validate_stirling_word(word: &[Val]) -> Result<(), String> {
    if word.len() % 2 != 0 {
        return Err(format!("word length {} is odd", word.len()));
    }
    let n = word.len() / 2;
    let mut count = vec![0usize; n + 1];
    for (i, &v) in word.iter().enumerate() {
        if v < 1 || v as usize > n {
            return Err(format!(
                "value {v} at position {} is outside 1..={n}",
                i + 1
            ));
        }
        count[v as usize] += 1;
    }
    for v in 1..=n {
        if count[v] != 2 {
            return Err(format!(
                "value {v} appears {} times, expected twice",
                count[v]
            ));
        }
    }
    // Nesting check: open intervals form a stack and pushes strictly
    // increase, which is equivalent to the between-copies condition.
    let mut stack: Vec<Val> = Vec::new();
    for (i, &v) in word.iter().enumerate() {
        if stack.last() == Some(&v) {
            stack.pop();
        } else if let Some(&top) = stack.last() {
            if v <= top {
                return Err(format!(
                    "entry {v} at position {} between the two occurrences of {top}",
                    i + 1
                ));
            }
            stack.push(v);
        } else {
            stack.push(v);
        }
    }
    Ok(())
}

impl StirlingPerm {
    pub fn new(word: Vec<Val>) -> Result<StirlingPerm, String> {
        validate_stirling_word(&word)?;
        Ok(StirlingPerm { word })
    }

    pub(crate) fn new_unchecked(word: Vec<Val>) -> StirlingPerm {
        debug_assert!(validate_stirling_word(&word).is_ok());
        StirlingPerm { word }
    }

    /// Order `n`: the word has length `2n`.
    pub fn n(&self) -> usize {
        self.word.len() / 2
    }

    pub fn word(&self) -> &[Val] {
        &self.word
    }

    pub fn validate(&self) -> Result<(), String> {
        validate_stirling_word(&self.word)
    }

    pub fn encode_text(&self) -> String {
        self.word
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn decode_text(s: &str) -> Result<StirlingPerm, ParseError> {
        let entries = parse_word(s)?;
        for (i, &(_, c)) in entries.iter().enumerate() {
            if c != 0 {
                return parse_err(i, "a Stirling permutation has no colored entries");
            }
        }
        let word: Vec<Val> = entries.into_iter().map(|(v, _)| v).collect();
        StirlingPerm::new(word).map_err(|msg| ParseError { pos: 0, msg })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "word": self.word })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<StirlingPerm, ParseError> {
        let word = json_u32_array(v, "word")?;
        StirlingPerm::new(word).map_err(|msg| ParseError { pos: 0, msg })
    }
}

impl fmt::Display for StirlingPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.encode_text())
    }
}

// ---------------------------------------------------------------------------
// CycleStirlingPerm
// ---------------------------------------------------------------------------

/// A Stirling permutation of the second kind in standard cycle form: the
/// value supports of the cycles partition `[n]`, every cycle word begins with
/// its minimal value, cycles are listed by increasing minima, and the
/// reduction of each cycle word is a Stirling permutation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycleStirlingPerm {
    cycles: Vec<Vec<Val>>,
}

fn validate_cycle_stirling(cycles: &[Vec<Val>]) -> Result<(), String> {
    let total: usize = cycles.iter().map(|c| c.len()).sum();
    if total % 2 != 0 {
        return Err("total length is odd".into());
    }
    let n = total / 2;
    let mut count = vec![0usize; n + 1];
    for (ci, cycle) in cycles.iter().enumerate() {
        if cycle.is_empty() {
            return Err(format!("cycle {} is empty", ci + 1));
        }
        for &v in cycle {
            if v < 1 || v as usize > n {
                return Err(format!("value {v} in cycle {} is outside 1..={n}", ci + 1));
            }
            count[v as usize] += 1;
        }
    }
    for v in 1..=n {
        if count[v] != 2 {
            return Err(format!(
                "value {v} appears {} times, expected twice",
                count[v]
            ));
        }
    }
    // Both copies of a value in one cycle.
    for (ci, cycle) in cycles.iter().enumerate() {
        let mut local = std::collections::HashMap::new();
        for &v in cycle {
            *local.entry(v).or_insert(0usize) += 1;
        }
        for (&v, &c) in &local {
            if c != 2 {
                return Err(format!(
                    "value {v} appears {c} time(s) in cycle {}, the two copies must share a cycle",
                    ci + 1
                ));
            }
        }
    }
    let mut prev_min: Option<Val> = None;
    for (ci, cycle) in cycles.iter().enumerate() {
        let min = *cycle.iter().min().expect("nonempty cycle");
        if cycle[0] != min {
            return Err(format!(
                "cycle {} begins with {}, not its minimal value {min}",
                ci + 1,
                cycle[0]
            ));
        }
        if let Some(p) = prev_min {
            if min <= p {
                return Err(format!("cycle minima must increase, found {min} after {p}"));
            }
        }
        prev_min = Some(min);
        validate_stirling_word(&red(cycle))
            .map_err(|e| format!("reduction of cycle {} is not Stirling: {e}", ci + 1))?;
    }
    Ok(())
}

impl CycleStirlingPerm {
    pub fn new(cycles: Vec<Vec<Val>>) -> Result<CycleStirlingPerm, String> {
        validate_cycle_stirling(&cycles)?;
        Ok(CycleStirlingPerm { cycles })
    }

    pub(crate) fn new_unchecked(cycles: Vec<Vec<Val>>) -> CycleStirlingPerm {
        debug_assert!(validate_cycle_stirling(&cycles).is_ok());
        CycleStirlingPerm { cycles }
    }

    pub fn n(&self) -> usize {
        self.cycles.iter().map(|c| c.len()).sum::<usize>() / 2
    }

    pub fn cycles(&self) -> &[Vec<Val>] {
        &self.cycles
    }

    pub fn validate(&self) -> Result<(), String> {
        validate_cycle_stirling(&self.cycles)
    }

    pub fn encode_text(&self) -> String {
        self.cycles
            .iter()
            .map(|c| {
                format!(
                    "({})",
                    c.iter()
                        .map(|v| v.to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                )
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn decode_text(s: &str) -> Result<CycleStirlingPerm, ParseError> {
        let groups = parse_groups(s)?;
        CycleStirlingPerm::new(groups).map_err(|msg| ParseError { pos: 0, msg })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "cycles": self.cycles })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<CycleStirlingPerm, ParseError> {
        let arr = v
            .get("cycles")
            .and_then(|x| x.as_array())
            .ok_or_else(|| ParseError {
                pos: 0,
                msg: "missing array field cycles".into(),
            })?;
        let mut cycles = Vec::new();
        for c in arr {
            let vals = c.as_array().ok_or_else(|| ParseError {
                pos: 0,
                msg: "cycle is not an array".into(),
            })?;
            cycles.push(
                vals.iter()
                    .map(|x| {
                        x.as_u64().map(|u| u as Val).ok_or_else(|| ParseError {
                            pos: 0,
                            msg: "cycle entry is not an integer".into(),
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()?,
            );
        }
        CycleStirlingPerm::new(cycles).map_err(|msg| ParseError { pos: 0, msg })
    }
}

impl fmt::Display for CycleStirlingPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.encode_text())
    }
}

// ---------------------------------------------------------------------------
// Matching
// ---------------------------------------------------------------------------

/// A perfect matching of `[2n]` in standard form: pairs `(i_k, j_k)` with
/// `i_k < j_k` and `i_1 < i_2 < ...` starting at `i_1 = 1`. The smaller
/// element of a pair is its ascending entry, the larger its descending entry.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matching {
    pairs: Vec<(Val, Val)>,
}

fn validate_matching(pairs: &[(Val, Val)]) -> Result<(), String> {
    let m = 2 * pairs.len();
    let mut seen = vec![false; m + 1];
    for (k, &(i, j)) in pairs.iter().enumerate() {
        if i >= j {
            return Err(format!("pair {} = ({i},{j}) is not increasing", k + 1));
        }
        for v in [i, j] {
            if v < 1 || v as usize > m {
                return Err(format!("entry {v} is outside 1..={m}"));
            }
            if seen[v as usize] {
                return Err(format!("entry {v} appears twice"));
            }
            seen[v as usize] = true;
        }
        if k > 0 && pairs[k - 1].0 >= i {
            return Err(format!(
                "ascending entries must increase, found {i} after {}",
                pairs[k - 1].0
            ));
        }
    }
    if !pairs.is_empty() && pairs[0].0 != 1 {
        return Err("standard form starts with the pair containing 1".into());
    }
    Ok(())
}

impl Matching {
    pub fn new(pairs: Vec<(Val, Val)>) -> Result<Matching, String> {
        validate_matching(&pairs)?;
        Ok(Matching { pairs })
    }

    /// Standardize an arbitrary pair list into standard form, then validate.
    pub fn from_pairs(mut pairs: Vec<(Val, Val)>) -> Result<Matching, String> {
        for p in pairs.iter_mut() {
            if p.0 > p.1 {
                *p = (p.1, p.0);
            }
        }
        pairs.sort();
        Matching::new(pairs)
    }

    pub(crate) fn new_unchecked(pairs: Vec<(Val, Val)>) -> Matching {
        debug_assert!(validate_matching(&pairs).is_ok());
        Matching { pairs }
    }

    /// Number of pairs.
    pub fn n(&self) -> usize {
        self.pairs.len()
    }

    pub fn pairs(&self) -> &[(Val, Val)] {
        &self.pairs
    }

    pub fn validate(&self) -> Result<(), String> {
        validate_matching(&self.pairs)
    }

    /// `true` where `2i-1` and `2i` are both ascending or both descending for
    /// every `i`; defined for matchings of `[4k]`.
    pub fn is_h_matching(&self) -> bool {
        let m = 2 * self.pairs.len();
        if m % 4 != 0 {
            return false;
        }
        let mut ascending = vec![false; m + 1];
        for &(i, _) in &self.pairs {
            ascending[i as usize] = true;
        }
        (1..=m / 2).all(|i| ascending[2 * i - 1] == ascending[2 * i])
    }

    pub fn encode_text(&self) -> String {
        self.pairs
            .iter()
            .map(|(i, j)| format!("({i} {j})"))
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn decode_text(s: &str) -> Result<Matching, ParseError> {
        let groups = parse_groups(s)?;
        let mut pairs = Vec::new();
        for (k, g) in groups.iter().enumerate() {
            if g.len() != 2 {
                return parse_err(k, format!("pair has {} entries, expected 2", g.len()));
            }
            pairs.push((g[0], g[1]));
        }
        Matching::new(pairs).map_err(|msg| ParseError { pos: 0, msg })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "pairs": self.pairs.iter().map(|&(i, j)| vec![i, j]).collect::<Vec<_>>()
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Matching, ParseError> {
        let arr = v
            .get("pairs")
            .and_then(|x| x.as_array())
            .ok_or_else(|| ParseError {
                pos: 0,
                msg: "missing array field pairs".into(),
            })?;
        let mut pairs = Vec::new();
        for p in arr {
            let xs = p
                .as_array()
                .filter(|a| a.len() == 2)
                .ok_or_else(|| ParseError {
                    pos: 0,
                    msg: "pair is not a 2-element array".into(),
                })?;
            let i = xs[0].as_u64().ok_or_else(|| ParseError {
                pos: 0,
                msg: "pair entry is not an integer".into(),
            })? as Val;
            let j = xs[1].as_u64().ok_or_else(|| ParseError {
                pos: 0,
                msg: "pair entry is not an integer".into(),
            })? as Val;
            pairs.push((i, j));
        }
        Matching::new(pairs).map_err(|msg| ParseError { pos: 0, msg })
    }
}

impl fmt::Display for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.encode_text())
    }
}

// ---------------------------------------------------------------------------
// BicoloredTree
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Color {
    White,
    Black,
}

impl Color {
    pub fn letter(self) -> char {
        match self {
            Color::White => 'w',
            Color::Black => 'b',
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TreeNode {
    pub label: Val,
    pub color: Color,
    pub left: Option<Box<TreeNode>>,
    pub right: Option<Box<TreeNode>>,
}

/// An increasing binary tree on labels `1..=n` whose nodes carry a
/// white/black color, with every node on the leftmost path (the special
/// nodes) forced white.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BicoloredTree {
    root: Option<Box<TreeNode>>,
}

fn collect_labels(node: &TreeNode, labels: &mut Vec<Val>) {
    labels.push(node.label);
    if let Some(l) = &node.left {
        collect_labels(l, labels);
    }
    if let Some(r) = &node.right {
        collect_labels(r, labels);
    }
}

fn check_increasing(node: &TreeNode) -> Result<(), String> {
    for child in [&node.left, &node.right].into_iter().flatten() {
        if child.label <= node.label {
            return Err(format!(
                "label {} below label {} breaks the increasing property",
                child.label, node.label
            ));
        }
        check_increasing(child)?;
    }
    Ok(())
}

fn validate_tree(root: &Option<Box<TreeNode>>) -> Result<(), String> {
    let Some(root) = root else {
        return Ok(());
    };
    let mut labels = Vec::new();
    collect_labels(root, &mut labels);
    let n = labels.len() as Val;
    let mut sorted = labels.clone();
    sorted.sort_unstable();
    if sorted != (1..=n).collect::<Vec<_>>() {
        return Err(format!("labels are not a bijection with 1..={n}"));
    }
    check_increasing(root)?;
    let mut node = Some(root);
    while let Some(cur) = node {
        if cur.color != Color::White {
            return Err(format!(
                "special node {} on the leftmost path is not white",
                cur.label
            ));
        }
        node = cur.left.as_ref();
    }
    Ok(())
}

impl BicoloredTree {
    pub fn new(root: Option<Box<TreeNode>>) -> Result<BicoloredTree, String> {
        validate_tree(&root)?;
        Ok(BicoloredTree { root })
    }

    pub(crate) fn new_unchecked(root: Option<Box<TreeNode>>) -> BicoloredTree {
        debug_assert!(validate_tree(&root).is_ok());
        BicoloredTree { root }
    }

    pub fn root(&self) -> Option<&TreeNode> {
        self.root.as_deref()
    }

    pub(crate) fn into_root(self) -> Option<Box<TreeNode>> {
        self.root
    }

    pub fn n(&self) -> usize {
        fn count(node: &TreeNode) -> usize {
            1 + node.left.as_deref().map_or(0, count) + node.right.as_deref().map_or(0, count)
        }
        self.root.as_deref().map_or(0, count)
    }

    pub fn validate(&self) -> Result<(), String> {
        validate_tree(&self.root)
    }

    /// Labels on the leftmost path (the special nodes), root first.
    pub fn special_labels(&self) -> Vec<Val> {
        let mut out = Vec::new();
        let mut node = self.root.as_deref();
        while let Some(cur) = node {
            out.push(cur.label);
            node = cur.left.as_deref();
        }
        out
    }

    pub fn encode_text(&self) -> String {
        fn enc(node: &Option<Box<TreeNode>>, out: &mut String) {
            match node {
                None => out.push_str("()"),
                Some(n) => {
                    out.push('(');
                    out.push_str(&n.label.to_string());
                    out.push(' ');
                    out.push(n.color.letter());
                    out.push(' ');
                    enc(&n.left, out);
                    out.push(' ');
                    enc(&n.right, out);
                    out.push(')');
                }
            }
        }
        let mut out = String::new();
        enc(&self.root, &mut out);
        out
    }

    pub fn decode_text(s: &str) -> Result<BicoloredTree, ParseError> {
        let tokens = tree_tokens(s)?;
        let mut pos = 0;
        let root = parse_tree_node(&tokens, &mut pos)?;
        if pos != tokens.len() {
            return parse_err(pos, "trailing input after tree");
        }
        BicoloredTree::new(root).map_err(|msg| ParseError { pos: 0, msg })
    }

    pub fn to_json(&self) -> serde_json::Value {
        fn enc(node: &Option<Box<TreeNode>>) -> serde_json::Value {
            match node {
                None => serde_json::Value::Null,
                Some(n) => serde_json::json!({
                    "label": n.label,
                    "color": n.color.letter().to_string(),
                    "left": enc(&n.left),
                    "right": enc(&n.right),
                }),
            }
        }
        enc(&self.root)
    }

    pub fn from_json(v: &serde_json::Value) -> Result<BicoloredTree, ParseError> {
        fn dec(v: &serde_json::Value) -> Result<Option<Box<TreeNode>>, ParseError> {
            if v.is_null() {
                return Ok(None);
            }
            let label = v
                .get("label")
                .and_then(|x| x.as_u64())
                .ok_or_else(|| ParseError {
                    pos: 0,
                    msg: "missing integer field label".into(),
                })? as Val;
            let color = match v.get("color").and_then(|x| x.as_str()) {
                Some("w") => Color::White,
                Some("b") => Color::Black,
                _ => {
                    return Err(ParseError {
                        pos: 0,
                        msg: "color must be \"w\" or \"b\"".into(),
                    })
                }
            };
            let left = dec(v.get("left").unwrap_or(&serde_json::Value::Null))?;
            let right = dec(v.get("right").unwrap_or(&serde_json::Value::Null))?;
            Ok(Some(Box::new(TreeNode {
                label,
                color,
                left,
                right,
            })))
        }
        let root = dec(v)?;
        BicoloredTree::new(root).map_err(|msg| ParseError { pos: 0, msg })
    }

    /// Graphviz DOT rendering; black nodes are filled.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph tree {\n  node [shape=circle];\n");
        fn walk(node: &TreeNode, out: &mut String) {
            let style = match node.color {
                Color::White => "fillcolor=white style=filled",
                Color::Black => "fillcolor=black style=filled fontcolor=white",
            };
            out.push_str(&format!(
                "  n{} [label=\"{}\" {}];\n",
                node.label, node.label, style
            ));
            for (child, tag) in [(&node.left, "L"), (&node.right, "R")] {
                if let Some(c) = child {
                    out.push_str(&format!(
                        "  n{} -> n{} [label=\"{}\"];\n",
                        node.label, c.label, tag
                    ));
                    walk(c, out);
                }
            }
        }
        if let Some(root) = &self.root {
            walk(root, &mut out);
        }
        out.push_str("}\n");
        out
    }
}

impl fmt::Display for BicoloredTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.encode_text())
    }
}

// ---------------------------------------------------------------------------
// Parsing helpers
// ---------------------------------------------------------------------------

/// Parse a space-separated word of `v` or `v:c` entries.
fn parse_word(s: &str) -> Result<Vec<(Val, Val)>, ParseError> {
    let mut out = Vec::new();
    for (i, tok) in s.split_whitespace().enumerate() {
        let (v, c) = match tok.split_once(':') {
            None => (tok, "0"),
            Some((v, c)) => (v, c),
        };
        let v: Val = match v.parse() {
            Ok(v) => v,
            Err(_) => return parse_err(i, format!("expected an integer, found {tok:?}")),
        };
        let c: Val = match c.parse() {
            Ok(c) => c,
            Err(_) => return parse_err(i, format!("bad color in {tok:?}")),
        };
        out.push((v, c));
    }
    Ok(out)
}

/// Parse `( ... ) ( ... )` integer groups.
fn parse_groups(s: &str) -> Result<Vec<Vec<Val>>, ParseError> {
    let mut groups = Vec::new();
    let mut current: Option<Vec<Val>> = None;
    let normalized = s.replace('(', " ( ").replace(')', " ) ").replace(',', " ");
    for (i, tok) in normalized.split_whitespace().enumerate() {
        match tok {
            "(" => {
                if current.is_some() {
                    return parse_err(i, "nested group");
                }
                current = Some(Vec::new());
            }
            ")" => match current.take() {
                Some(g) => groups.push(g),
                None => return parse_err(i, "unmatched )"),
            },
            _ => {
                let v: Val = match tok.parse() {
                    Ok(v) => v,
                    Err(_) => return parse_err(i, format!("expected an integer, found {tok:?}")),
                };
                match current.as_mut() {
                    Some(g) => g.push(v),
                    None => return parse_err(i, "value outside a ( ) group"),
                }
            }
        }
    }
    if current.is_some() {
        return parse_err(0, "unclosed (");
    }
    Ok(groups)
}

fn tree_tokens(s: &str) -> Result<Vec<String>, ParseError> {
    let normalized = s.replace('(', " ( ").replace(')', " ) ");
    Ok(normalized.split_whitespace().map(str::to_string).collect())
}

fn parse_tree_node(
    tokens: &[String],
    pos: &mut usize,
) -> Result<Option<Box<TreeNode>>, ParseError> {
    if tokens.get(*pos).map(String::as_str) != Some("(") {
        return parse_err(*pos, "expected (");
    }
    *pos += 1;
    if tokens.get(*pos).map(String::as_str) == Some(")") {
        *pos += 1;
        return Ok(None);
    }
    let label: Val = match tokens.get(*pos).map(|t| t.parse()) {
        Some(Ok(v)) => v,
        _ => return parse_err(*pos, "expected a node label"),
    };
    *pos += 1;
    let color = match tokens.get(*pos).map(String::as_str) {
        Some("w") => Color::White,
        Some("b") => Color::Black,
        _ => return parse_err(*pos, "expected color w or b"),
    };
    *pos += 1;
    let left = parse_tree_node(tokens, pos)?;
    let right = parse_tree_node(tokens, pos)?;
    if tokens.get(*pos).map(String::as_str) != Some(")") {
        return parse_err(*pos, "expected )");
    }
    *pos += 1;
    Ok(Some(Box::new(TreeNode {
        label,
        color,
        left,
        right,
    })))
}

fn json_u32_array(v: &serde_json::Value, field: &str) -> Result<Vec<Val>, ParseError> {
    let arr = v
        .get(field)
        .and_then(|x| x.as_array())
        .ok_or_else(|| ParseError {
            pos: 0,
            msg: format!("missing array field {field}"),
        })?;
    arr.iter()
        .map(|x| {
            x.as_u64().map(|u| u as Val).ok_or_else(|| ParseError {
                pos: 0,
                msg: format!("non-integer entry in {field}"),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stirling_nesting_examples() {
        assert!(StirlingPerm::new(vec![1, 2, 2, 1]).is_ok());
        let err = StirlingPerm::new(vec![1, 2, 1, 2]).unwrap_err();
        assert!(err.contains("between the two occurrences"), "{err}");
        assert!(StirlingPerm::new(vec![2, 1, 1, 2]).is_err());
        assert!(StirlingPerm::new(vec![]).is_ok());
    }

    #[test]
    fn stirling_multiplicity_error() {
        let err = StirlingPerm::new(vec![1, 1, 2]).unwrap_err();
        assert!(err.contains("odd"), "{err}");
        let err = StirlingPerm::decode_text("1 1 2 2 2 2").unwrap_err();
        assert!(err.msg.contains("appears 4 times"), "{err}");
    }

    #[test]
    fn marked_perm_lrmin_must_be_white() {
        // 2 with a mark in first position is a left-to-right minimum
        let err = MarkedPerm::new(vec![2, 1], vec![1, 0], 2).unwrap_err();
        assert!(err.contains("left-to-right minimum"), "{err}");
        assert!(MarkedPerm::new(vec![1, 2], vec![0, 1], 2).is_ok());
    }

    #[test]
    fn red_examples() {
        assert_eq!(red(&[3, 3, 2, 2, 4, 5, 4, 7]), vec![2, 2, 1, 1, 3, 4, 3, 5]);
        assert_eq!(red(&[1, 1]), vec![1, 1]);
        assert_eq!(red(&[9, 7, 7]), vec![2, 1, 1]);
        // idempotent
        let w = vec![4, 9, 9, 4, 2, 2];
        assert_eq!(red(&red(&w)), red(&w));
    }

    #[test]
    fn block_decomposition_examples() {
        let w = [3, 4, 6, 6, 4, 3, 2, 5, 5, 2, 7, 7, 1, 1];
        assert_eq!(
            blocks(&w),
            vec![vec![3, 4, 6, 6, 4, 3], vec![2, 5, 5, 2, 7, 7], vec![1, 1]]
        );
        let w = [3, 4, 6, 2, 5, 7, 1];
        assert_eq!(blocks(&w), vec![vec![3, 4, 6], vec![2, 5, 7], vec![1]]);
        // decreasing word: singleton blocks
        assert_eq!(blocks(&[3, 2, 1]), vec![vec![3], vec![2], vec![1]]);
    }

    #[test]
    fn rl_block_examples() {
        let w = [2, 1, 4, 8, 5, 3, 6, 9, 7];
        assert_eq!(
            rl_blocks(&w),
            vec![vec![2, 1], vec![4, 8, 5, 3], vec![6], vec![9, 7]]
        );
        assert_eq!(rl_blocks(&[1, 2, 3]), vec![vec![1], vec![2], vec![3]]);
        assert_eq!(rl_blocks(&[3, 2, 1]), vec![vec![3, 2, 1]]);
    }

    #[test]
    fn marked_text_roundtrip() {
        let m = MarkedPerm::new(vec![2, 5, 6, 1, 4, 3], vec![0, 0, 1, 0, 0, 1], 2).unwrap();
        assert_eq!(m.encode_text(), "2 5 6:1 1 4 3:1");
        assert_eq!(MarkedPerm::decode_text("2 5 6:1 1 4 3:1").unwrap(), m);
    }

    #[test]
    fn decode_rejects_bad_objects() {
        assert!(StirlingPerm::decode_text("1 1 2").is_err());
        assert!(Perm::decode_text("1 3").is_err());
        assert!(Matching::decode_text("(1 2) (3)").is_err());
        assert!(Matching::decode_text("(2 3) (1 4)").is_err());
    }

    #[test]
    fn matching_standard_form() {
        let m = Matching::from_pairs(vec![(4, 2), (3, 1)]).unwrap();
        assert_eq!(m.pairs(), &[(1, 3), (2, 4)]);
        assert_eq!(m.encode_text(), "(1 3) (2 4)");
        assert_eq!(Matching::decode_text("(1 3) (2 4)").unwrap(), m);
        assert!(m.is_h_matching());
        let not_h = Matching::new(vec![(1, 2), (3, 4)]).unwrap();
        assert!(!not_h.is_h_matching());
    }

    #[test]
    fn tree_roundtrip_and_validation() {
        let text = "(1 w (2 w () (3 w () ())) (4 b (5 b () ()) (6 w () ())))";
        let t = BicoloredTree::decode_text(text).unwrap();
        assert_eq!(t.n(), 6);
        assert_eq!(t.special_labels(), vec![1, 2]);
        assert_eq!(t.encode_text(), text);
        let back = BicoloredTree::from_json(&t.to_json()).unwrap();
        assert_eq!(back, t);
        // a black special node is rejected
        assert!(BicoloredTree::decode_text("(1 b () ())").is_err());
        // a non-increasing labeling is rejected
        assert!(BicoloredTree::decode_text("(2 w (1 w () ()) ())").is_err());
        // empty tree
        assert_eq!(BicoloredTree::decode_text("()").unwrap().n(), 0);
    }

    #[test]
    fn cycle_form_examples() {
        assert!(CycleStirlingPerm::decode_text("(1 1) (2 2)").is_ok());
        assert!(CycleStirlingPerm::decode_text("(1 1 2 2)").is_ok());
        assert!(CycleStirlingPerm::decode_text("(1 2 2 1)").is_ok());
        // cycle must start at its minimum
        assert!(CycleStirlingPerm::decode_text("(2 2 1 1)").is_err());
        // both copies must share a cycle
        assert!(CycleStirlingPerm::decode_text("(1 2 1 2)").is_err());
        // minima must increase
        assert!(CycleStirlingPerm::decode_text("(2 2) (1 1)").is_err());
    }
}
