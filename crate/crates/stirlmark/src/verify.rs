//! Identity checkers: every identity is reduced to an exact polynomial or
//! integer comparison with the two sides computed through independent code
//! paths (exhaustive enumeration against closed-form series), reporting a
//! minimal witness on mismatch.

use crate::generate::{
    gen_cycle_stirling, gen_h_matchings, gen_marked, gen_perms, gen_stirling,
    gen_stirling_derangements, odd_double_factorial,
};
use crate::maps;
use crate::named;
use crate::objects::{rlmin_positions, Val};
use crate::poly::{int, MPoly, Mono, Var};
use crate::series::{factorial, SeriesError, TSeries};
use crate::stats::{self, StatName};
use std::collections::HashMap;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VerifyError {
    UnknownStatistic { stat: StatName, class: String },
    OutOfBounds(String),
    Series(SeriesError),
}

impl fmt::Display for VerifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifyError::UnknownStatistic { stat, class } => {
                write!(f, "statistic {} is not defined for {class}", stat.name())
            }
            VerifyError::OutOfBounds(m) => write!(f, "parameters out of bounds: {m}"),
            VerifyError::Series(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for VerifyError {}

impl From<SeriesError> for VerifyError {
    fn from(e: SeriesError) -> VerifyError {
        VerifyError::Series(e)
    }
}

// ---------------------------------------------------------------------------
// Weighted distribution polynomials
// ---------------------------------------------------------------------------

/// Object class selector for [`dist_poly`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ObjClass {
    Perm,
    Marked(u32),
    Stirling,
    CycleStirling,
    Derangement,
}

impl ObjClass {
    pub fn label(self) -> String {
        match self {
            ObjClass::Perm => "perm".into(),
            ObjClass::Marked(r) => format!("marked({r})"),
            ObjClass::Stirling => "stirling".into(),
            ObjClass::CycleStirling => "stirling2".into(),
            ObjClass::Derangement => "derangement".into(),
        }
    }
}

/// One multiplicative factor of an object weight.
#[derive(Clone, Copy, Debug)]
pub enum Factor {
    /// `var^(stat + offset)`
    VarStat {
        var: Var,
        stat: StatName,
        offset: i64,
    },
    /// `(-1)^stat`
    Sign(StatName),
    /// `base^(n - stat)`
    BaseComplement { base: i64, stat: StatName },
}

/// Product of factors evaluated per object and summed over the class.
#[derive(Clone, Debug, Default)]
pub struct WeightSpec {
    factors: Vec<Factor>,
}

impl WeightSpec {
    pub fn new() -> WeightSpec {
        WeightSpec::default()
    }

    pub fn var(mut self, var: Var, stat: StatName) -> Self {
        self.factors.push(Factor::VarStat {
            var,
            stat,
            offset: 0,
        });
        self
    }

    pub fn var_offset(mut self, var: Var, stat: StatName, offset: i64) -> Self {
        self.factors.push(Factor::VarStat { var, stat, offset });
        self
    }

    pub fn sign(mut self, stat: StatName) -> Self {
        self.factors.push(Factor::Sign(stat));
        self
    }

    pub fn base_complement(mut self, base: i64, stat: StatName) -> Self {
        self.factors.push(Factor::BaseComplement { base, stat });
        self
    }
}

fn perm_stat(word: &[Val], colors: &[Val], stat: StatName) -> Option<usize> {
    Some(match stat {
        StatName::Asc => stats::asc_count(word),
        StatName::Des => stats::des_count(word),
        StatName::Lrmin => stats::lrmin_count(word),
        StatName::Rlmin => stats::rlmin_count(word),
        StatName::Mark => stats::mark_count(colors),
        StatName::Desrlmin => stats::desrlmin_count(word),
        StatName::Exc => stats::exc_count(word),
        StatName::Cyc => stats::cyc_count(word),
        StatName::Fix => stats::fix_blocks_count(word),
        _ => return None,
    })
}

fn stirling_stat(word: &[Val], stat: StatName) -> Option<usize> {
    Some(match stat {
        StatName::Ap => stats::ap_count(word),
        StatName::Even => stats::even_count(word),
        StatName::Odd => stats::odd_count(word),
        StatName::Lrmin => stats::lrmin_count(word),
        StatName::Rlmin => stats::rlmin_count(word),
        StatName::Bk2 => stats::bk2_count(word),
        _ => return None,
    })
}

fn cycle_stat(cycles: &[Vec<Val>], stat: StatName) -> Option<usize> {
    Some(match stat {
        StatName::Cap => stats::cap_count(cycles),
        StatName::Cyc => cycles.len(),
        StatName::Fix => cycles.iter().filter(|c| c.len() == 2).count(),
        _ => return None,
    })
}

struct Accumulator<'a> {
    spec: &'a WeightSpec,
    n: usize,
    class: String,
    terms: HashMap<Mono, i64>,
}

impl<'a> Accumulator<'a> {
    fn new(spec: &'a WeightSpec, n: usize, class: String) -> Self {
        Accumulator {
            spec,
            n,
            class,
            terms: HashMap::new(),
        }
    }

    fn add<F: Fn(StatName) -> Option<usize>>(&mut self, stat_of: F) -> Result<(), VerifyError> {
        let mut mono = Mono::default();
        let mut weight: i64 = 1;
        for f in &self.spec.factors {
            match *f {
                Factor::VarStat { var, stat, offset } => {
                    let v = stat_of(stat).ok_or(VerifyError::UnknownStatistic {
                        stat,
                        class: self.class.clone(),
                    })?;
                    let e = v as i64 + offset;
                    assert!(e >= 0, "negative exponent from offset");
                    mono.0[var.index()] += e as u16;
                }
                Factor::Sign(stat) => {
                    let v = stat_of(stat).ok_or(VerifyError::UnknownStatistic {
                        stat,
                        class: self.class.clone(),
                    })?;
                    if v % 2 == 1 {
                        weight = -weight;
                    }
                }
                Factor::BaseComplement { base, stat } => {
                    let v = stat_of(stat).ok_or(VerifyError::UnknownStatistic {
                        stat,
                        class: self.class.clone(),
                    })?;
                    weight *= base.pow((self.n - v) as u32);
                }
            }
        }
        *self.terms.entry(mono).or_insert(0) += weight;
        Ok(())
    }

    fn finish(self) -> MPoly {
        let mut out = MPoly::zero();
        for (m, c) in self.terms {
            out.add_term(m, int(c));
        }
        out
    }
}

/// Exact distribution polynomial `sum over the class of the weight product`.
pub fn dist_poly(class: ObjClass, n: usize, spec: &WeightSpec) -> Result<MPoly, VerifyError> {
    let mut acc = Accumulator::new(spec, n, class.label());
    match class {
        ObjClass::Perm => {
            for p in gen_perms(n) {
                acc.add(|s| perm_stat(p.word(), &[], s))?;
            }
        }
        ObjClass::Marked(r) => {
            for m in gen_marked(n, r) {
                acc.add(|s| perm_stat(m.word(), m.colors(), s))?;
            }
        }
        ObjClass::Stirling => {
            for s in gen_stirling(n) {
                acc.add(|st| stirling_stat(s.word(), st))?;
            }
        }
        ObjClass::CycleStirling => {
            for c in gen_cycle_stirling(n) {
                acc.add(|st| cycle_stat(c.cycles(), st))?;
            }
        }
        ObjClass::Derangement => {
            for s in gen_stirling_derangements(n) {
                acc.add(|st| stirling_stat(s.word(), st))?;
            }
        }
    }
    Ok(acc.finish())
}

// ---------------------------------------------------------------------------
// Verification results
// ---------------------------------------------------------------------------

/// The identities the engine can check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Identity {
    /// triple-statistic transfer between Stirling and marked permutations,
    /// with the set-valued refinement at small orders
    StirlingMarked,
    /// both signed sums equal 1; the mark-toggling involution covers
    /// everything except the decreasing permutation
    SignBalance,
    /// trivariate marked EGF with the exact fractional power, plus the
    /// all-polynomial differential cross-check
    MarkedEgf,
    /// ascent-plateau polynomials against the square-root EGF
    AscentPlateauEgf,
    /// even/odd distribution against the first-kind-Stirling closed form
    EvenOddClosed,
    /// even/odd distribution against its two-term recurrence
    EvenOddRecurrence,
    /// special evaluations of the even/odd distribution
    EvenOddSpecials,
    /// transfer between one-line and cycle-form triple statistics
    CycleFormTransfer,
    /// cycle-form EGF (doubled-argument closed form), plus the singleton
    /// block EGF over plain permutations
    CycleFormEgf,
    /// signed ascent-plateau sums over Stirling derangements against the
    /// matching numbers, with the tree-involution pairing confirmation
    DerangementSigned,
    /// matching counts against the square-root secant series
    HNumbers,
    /// symmetry of the colored (asc+1, desrlmin) distribution, the
    /// rotate-sort-complement involution and its worked example
    ColoredSymmetry,
    /// bivariate (asc+1, desrlmin) EGF as an exponential
    DesrlminExp,
    /// colored root identity G_r = G_1(x,y,rt)^(1/r)
    DesrlminRoot,
    /// (lrmin, asc) equidistributed with (cyc, exc)
    CycleEquidist,
    /// exp of the first-entry-minimal class equals the Eulerian EGF
    SetOfBlocks,
}

impl Identity {
    pub const ALL: [Identity; 16] = [
        Identity::StirlingMarked,
        Identity::SignBalance,
        Identity::MarkedEgf,
        Identity::AscentPlateauEgf,
        Identity::EvenOddClosed,
        Identity::EvenOddRecurrence,
        Identity::EvenOddSpecials,
        Identity::CycleFormTransfer,
        Identity::CycleFormEgf,
        Identity::DerangementSigned,
        Identity::HNumbers,
        Identity::ColoredSymmetry,
        Identity::DesrlminExp,
        Identity::DesrlminRoot,
        Identity::CycleEquidist,
        Identity::SetOfBlocks,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::StirlingMarked => "stirling-marked",
            Identity::SignBalance => "sign-balance",
            Identity::MarkedEgf => "marked-egf",
            Identity::AscentPlateauEgf => "ascent-plateau-egf",
            Identity::EvenOddClosed => "evenodd-closed",
            Identity::EvenOddRecurrence => "evenodd-recurrence",
            Identity::EvenOddSpecials => "evenodd-specials",
            Identity::CycleFormTransfer => "cycle-form-transfer",
            Identity::CycleFormEgf => "cycle-form-egf",
            Identity::DerangementSigned => "derangement-signed",
            Identity::HNumbers => "h-numbers",
            Identity::ColoredSymmetry => "colored-symmetry",
            Identity::DesrlminExp => "desrlmin-exp",
            Identity::DesrlminRoot => "desrlmin-root",
            Identity::CycleEquidist => "cycle-equidist",
            Identity::SetOfBlocks => "set-of-blocks",
        }
    }

    pub fn from_name(s: &str) -> Option<Identity> {
        Identity::ALL.into_iter().find(|x| x.name() == s)
    }
}

#[derive(Clone, Debug, Default)]
pub struct VerifyParams {
    pub n: Option<usize>,
    pub r: Option<u32>,
    pub order: Option<usize>,
}

/// One side of a verified identity.
#[derive(Clone, Debug)]
pub enum Side {
    Poly(MPoly),
    Series(TSeries),
    Count(i64),
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Poly(p) => write!(f, "{p}"),
            Side::Series(s) => write!(f, "{s}"),
            Side::Count(c) => write!(f, "{c}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyResult {
    pub identity: Identity,
    pub params: String,
    pub pass: bool,
    pub lhs: Side,
    pub rhs: Side,
    pub witness: Option<String>,
}

impl VerifyResult {
    fn pass(identity: Identity, params: String, lhs: Side, rhs: Side) -> VerifyResult {
        VerifyResult {
            identity,
            params,
            pass: true,
            lhs,
            rhs,
            witness: None,
        }
    }

    fn fail(
        identity: Identity,
        params: String,
        lhs: Side,
        rhs: Side,
        witness: String,
    ) -> VerifyResult {
        VerifyResult {
            identity,
            params,
            pass: false,
            lhs,
            rhs,
            witness: Some(witness),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "identity": self.identity.name(),
            "params": self.params,
            "status": if self.pass { "pass" } else { "fail" },
            "lhs": self.lhs.to_string(),
            "rhs": self.rhs.to_string(),
            "witness": self.witness,
        })
    }
}

impl fmt::Display for VerifyResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} [{}]: {}",
            self.identity.name(),
            self.params,
            if self.pass { "pass" } else { "fail" }
        )?;
        if let Some(w) = &self.witness {
            write!(f, " ({w})")?;
        }
        Ok(())
    }
}

/// Compare two polynomials, reporting the lexicographically first differing
/// monomial as the witness.
fn poly_check(
    identity: Identity,
    params: String,
    lhs: MPoly,
    rhs: MPoly,
    context: &str,
) -> VerifyResult {
    match lhs.first_diff(&rhs) {
        None => VerifyResult::pass(identity, params, Side::Poly(lhs), Side::Poly(rhs)),
        Some((m, a, b)) => {
            let witness = format!("{context}: first differing monomial {m}: {a} vs {b}");
            VerifyResult::fail(identity, params, Side::Poly(lhs), Side::Poly(rhs), witness)
        }
    }
}

fn bounds(cond: bool, msg: &str) -> Result<(), VerifyError> {
    if cond {
        Ok(())
    } else {
        Err(VerifyError::OutOfBounds(msg.into()))
    }
}

const MAX_N: usize = 9;
const MAX_ORDER: usize = 9;
const MAX_R: u32 = 6;

fn sweep(params_n: Option<usize>, default_max: usize) -> Vec<usize> {
    match params_n {
        Some(n) => vec![n],
        None => (1..=default_max).collect(),
    }
}

// ---------------------------------------------------------------------------
// Checkers
// ---------------------------------------------------------------------------

/// Check one identity. Absent parameters run the full default sweep used by
/// the acceptance suite.
pub fn verify_identity(
    identity: Identity,
    params: &VerifyParams,
) -> Result<VerifyResult, VerifyError> {
    if let Some(n) = params.n {
        bounds(n <= MAX_N, "n at most 9")?;
    }
    if let Some(o) = params.order {
        bounds(o <= MAX_ORDER, "order at most 9")?;
    }
    if let Some(r) = params.r {
        bounds((1..=MAX_R).contains(&r), "r in 1..=6")?;
    }
    match identity {
        Identity::StirlingMarked => stirling_marked(params),
        Identity::SignBalance => sign_balance(params),
        Identity::MarkedEgf => marked_egf_check(params),
        Identity::AscentPlateauEgf => ascent_plateau_check(params),
        Identity::EvenOddClosed => evenodd_closed(params),
        Identity::EvenOddRecurrence => evenodd_recurrence(params),
        Identity::EvenOddSpecials => evenodd_specials(params),
        Identity::CycleFormTransfer => cycle_form_transfer(params),
        Identity::CycleFormEgf => cycle_form_egf_check(params),
        Identity::DerangementSigned => derangement_signed(params),
        Identity::HNumbers => h_numbers(params),
        Identity::ColoredSymmetry => colored_symmetry(params),
        Identity::DesrlminExp => desrlmin_exp(params),
        Identity::DesrlminRoot => desrlmin_root(params),
        Identity::CycleEquidist => cycle_equidist(params),
        Identity::SetOfBlocks => set_of_blocks(params),
    }
}

/// Run every identity at its default bounds, in declaration order.
pub fn verify_all() -> Result<Vec<VerifyResult>, VerifyError> {
    Identity::ALL
        .into_iter()
        .map(|id| verify_identity(id, &VerifyParams::default()))
        .collect()
}

fn stirling_marked(params: &VerifyParams) -> Result<VerifyResult, VerifyError> {
    let id = Identity::StirlingMarked;
    let ns = sweep(params.n, 7);
    let lhs_spec = WeightSpec::new()
        .var(Var::Q, StatName::Lrmin)
        .var(Var::X, StatName::Ap)
        .var(Var::Y, StatName::Even);
    let rhs_spec = WeightSpec::new()
        .var(Var::Q, StatName::Lrmin)
        .var(Var::X, StatName::Asc)
        .var(Var::Y, StatName::Mark);
    let mut last = None;
    for &n in &ns {
        let lhs = dist_poly(ObjClass::Stirling, n, &lhs_spec)?;
        let rhs = dist_poly(ObjClass::Marked(2), n, &rhs_spec)?;
        let res = poly_check(id, format!("n={n}"), lhs, rhs, &format!("n={n}"));
        if !res.pass {
            return Ok(res);
        }
        // set-valued refinement: the multiset of value-set triples agrees
        if n <= 6 {
            let mut left: HashMap<(Vec<Val>, Vec<Val>, Vec<Val>), i64> = HashMap::new();
            for s in gen_stirling(n) {
                let rep = stats::stirling_stats(&s);
                let key = (
                    rep.set(StatName::Lrmin).unwrap().to_vec(),
                    rep.set(StatName::Ap).unwrap().to_vec(),
                    rep.set(StatName::Even).unwrap().to_vec(),
                );
                *left.entry(key).or_insert(0) += 1;
            }
            let mut right = left.clone();
            for m in gen_marked(n, 2) {
                let rep = stats::perm_stats(&m);
                let key = (
                    rep.set(StatName::Lrmin).unwrap().to_vec(),
                    rep.set(StatName::Asc).unwrap().to_vec(),
                    rep.set(StatName::Mark).unwrap().to_vec(),
                );
                *right.entry(key).or_insert(0) -= 1;
            }
            if let Some((key, diff)) = right.iter().find(|(_, &d)| d != 0) {
                return Ok(VerifyResult::fail(
                    id,
                    format!("n={n}"),
                    Side::Count(*diff),
                    Side::Count(0),
                    format!("set triple {key:?} has multiplicity difference {diff}"),
                ));
            }
        }
        last = Some(res);
    }
    Ok(last.expect("nonempty sweep"))
}

fn sign_balance(params: &VerifyParams) -> Result<VerifyResult, VerifyError> {
    let id = Identity::SignBalance;
    let ns = sweep(params.n, 8);
    let lhs_spec = WeightSpec::new()
        .var(Var::X, StatName::Ap)
        .sign(StatName::Even);
    let rhs_spec = WeightSpec::new()
        .var(Var::X, StatName::Asc)
        .sign(StatName::Mark);
    let mut last = None;
    for &n in &ns {
        let lhs = dist_poly(ObjClass::Stirling, n, &lhs_spec)?;
        let rhs = dist_poly(ObjClass::Marked(2), n, &rhs_spec)?;
        for (side, poly) in [("stirling", &lhs), ("marked", &rhs)] {
            if !poly.is_one() {
                return Ok(VerifyResult::fail(
                    id,
                    format!("n={n}"),
                    Side::Poly(lhs.clone()),
                    Side::Poly(MPoly::one()),
                    format!("{side} signed sum is {poly}, not 1"),
                ));
            }
        }
        // pairing coverage: the involution moves everything except the
        // decreasing permutation, preserving asc and flipping the mark parity
        if n <= 6 {
            let mut fixed = 0usize;
            for m in gen_marked(n, 2) {
                match maps::iota(&m) {
                    Ok(other) => {
                        let ok = other != m
                            && maps::iota(&other).unwrap() == m
                            && stats::asc_count(other.word()) == stats::asc_count(m.word())
                            && stats::mark_count(other.colors())
                                .abs_diff(stats::mark_count(m.colors()))
                                == 1;
                        if !ok {
                            return Ok(VerifyResult::fail(
                                id,
                                format!("n={n}"),
                                Side::Count(0),
                                Side::Count(0),
                                format!("pairing law broken at {m}"),
                            ));
                        }
                    }
                    Err(maps::MapError::FixedClass) => fixed += 1,
                    Err(e) => {
                        return Ok(VerifyResult::fail(
                            id,
                            format!("n={n}"),
                            Side::Count(0),
                            Side::Count(0),
                            format!("unexpected error {e}"),
                        ))
                    }
                }
            }
            if fixed != 1 {
                return Ok(VerifyResult::fail(
                    id,
                    format!("n={n}"),
                    Side::Count(fixed as i64),
                    Side::Count(1),
                    "exactly one object must be unpaired".into(),
                ));
            }
        }
        last = Some(VerifyResult::pass(
            id,
            format!("n={n}"),
            Side::Poly(lhs),
            Side::Poly(rhs),
        ));
    }
    Ok(last.expect("nonempty sweep"))
}

fn marked_egf_check(params: &VerifyParams) -> Result<VerifyResult, VerifyError> {
    let id = Identity::MarkedEgf;
    let order = params.order.unwrap_or(8);
    let series = named::marked_egf(order)?;
    let spec = WeightSpec::new()
        .var(Var::Q, StatName::Lrmin)
        .var(Var::X, StatName::Asc)
        .var(Var::Y, StatName::Mark);
    for n in 0..=order {
        let lhs = dist_poly(ObjClass::Marked(2), n, &spec)?;
        let rhs = series.egf_coeff(n);
        let res = poly_check(
            id,
            format!("order={order}"),
            lhs,
            rhs,
            &format!("EGF coefficient at t^{n}"),
        );
        if !res.pass {
            return Ok(res);
        }
    }
    // differential cross-check: with B = A(x,t(1+y)) and S the series,
    // (1+y) S' B = q S B' coefficientwise
    if order >= 1 {
        let one_plus_y = &MPoly::one() + &MPoly::var(Var::Y);
        let b = named::eulerian_series(order).scale_t(&one_plus_y);
        let s_t = series.derivative();
        let b_t = b.derivative();
        let lhs = s_t.mul(&b.truncate(order - 1)).mul_poly(&one_plus_y);
        let rhs = b_t
            .mul(&series.truncate(order - 1))
            .mul_poly(&MPoly::var(Var::Q));
        if lhs != rhs {
            return Ok(VerifyResult::fail(
                id,
                format!("order={order}"),
                Side::Series(lhs),
                Side::Series(rhs),
                "differential form mismatch".into(),
            ));
        }
    }
    Ok(VerifyResult::pass(
        id,
        format!("order={order}"),
        Side::Series(series.clone()),
        Side::Series(series),
    ))
}

fn ascent_plateau_check(params: &VerifyParams) -> Result<VerifyResult, VerifyError> {
    let id = Identity::AscentPlateauEgf;
    let order = params.order.or(params.n).unwrap_or(7);
    let series = named::ascent_plateau_series(order)?;
    let spec = WeightSpec::new().var(Var::X, StatName::Ap);
    let mut last = None;
    for n in 0..=order {
        let lhs = dist_poly(ObjClass::Stirling, n, &spec)?;
        let rhs = series.egf_coeff(n);
        let res = poly_check(
            id,
            format!("order={order}"),
            lhs,
            rhs,
            &format!("EGF coefficient at t^{n}"),
        );
        if !res.pass {
            return Ok(res);
        }
        last = Some(res);
    }
    Ok(last.expect("nonempty sweep"))
}

/// Signless Stirling numbers of the first kind by the two-term recurrence.
pub fn stirling_first_table(n: usize) -> Vec<Vec<u64>> {
    let mut table = vec![vec![0u64; n + 1]; n + 1];
    table[0][0] = 1;
    for m in 1..=n {
        for k in 1..=m {
            table[m][k] = table[m - 1][k - 1] + (m as u64 - 1) * table[m - 1][k];
        }
    }
    table
}

fn evenodd_enumeration(n: usize) -> Result<MPoly, VerifyError> {
    let spec = WeightSpec::new()
        .var(Var::P, StatName::Odd)
        .var(Var::Q, StatName::Even);
    dist_poly(ObjClass::Stirling, n, &spec)
}

fn evenodd_closed(params: &VerifyParams) -> Result<VerifyResult, VerifyError> {
    let id = Identity::EvenOddClosed;
    let ns = sweep(params.n, 7);
    let max_n = *ns.iter().max().unwrap();
    let c = stirling_first_table(max_n);
    // cross-check the table against the cycle statistic
    for &n in &ns {
        let mut hist = vec![0u64; n + 1];
        for p in gen_perms(n) {
            hist[stats::cyc_count(p.word())] += 1;
        }
        for k in 0..=n {
            if hist[k] != c[n][k] {
                return Ok(VerifyResult::fail(
                    id,
                    format!("n={n}"),
                    Side::Count(hist[k] as i64),
                    Side::Count(c[n][k] as i64),
                    format!("permutations with {k} cycles"),
                ));
            }
        }
    }
    let p = MPoly::var(Var::P);
    let p_plus_q = &p + &MPoly::var(Var::Q);
    let mut last = None;
    for &n in &ns {
        let lhs = evenodd_enumeration(n)?;
        let mut rhs = MPoly::zero();
        for k in 0..=n {
            if c[n][k] == 0 {
                continue;
            }
            let term = &p.pow(k as u32) * &p_plus_q.pow((n - k) as u32);
            rhs += &term.mul_scalar(&int(c[n][k] as i64));
        }
        let res = poly_check(id, format!("n={n}"), lhs, rhs, &format!("n={n}"));
        if !res.pass {
            return Ok(res);
        }
        last = Some(res);
    }
    Ok(last.expect("nonempty sweep"))
}

fn evenodd_recurrence(params: &VerifyParams) -> Result<VerifyResult, VerifyError> {
    let id = Identity::EvenOddRecurrence;
    let ns = sweep(params.n, 7);
    let max_n = *ns.iter().max().unwrap();
    // e[n][k] = count of order-n objects with k even indexed values
    let mut e = vec![vec![0u64; max_n + 1]; max_n + 1];
    if max_n >= 1 {
        e[1][0] = 1;
    }
    for n in 2..=max_n {
        for k in 0..n {
            let from_same = n as u64 * e[n - 1][k];
            let from_less = if k >= 1 {
                (n as u64 - 1) * e[n - 1][k - 1]
            } else {
                0
            };
            e[n][k] = from_same + from_less;
        }
    }
    let mut last = None;
    for &n in &ns {
        let lhs = evenodd_enumeration(n)?;
        let mut rhs = MPoly::zero();
        for k in 0..=n {
            if e[n][k] == 0 {
                continue;
            }
            let mono = Mono([0, 0, 0, k as u16, (n - k) as u16, 0]);
            rhs.add_term(mono, int(e[n][k] as i64));
        }
        let res = poly_check(id, format!("n={n}"), lhs, rhs, &format!("n={n}"));
        if !res.pass {
            return Ok(res);
        }
        last = Some(res);
    }
    Ok(last.expect("nonempty sweep"))
}

fn evenodd_specials(params: &VerifyParams) -> Result<VerifyResult, VerifyError> {
    let id = Identity::EvenOddSpecials;
    let ns = match params.n {
        Some(n) => vec![n],
        None => (2..=7).collect(),
    };
    let mut last = None;
    for &n in &ns {
        let e = evenodd_enumeration(n)?;
        let one = MPoly::one();
        let checks: [(&str, MPoly, MPoly); 4] = [
            (
                "E(1,1)",
                e.substitute(Var::P, &one).substitute(Var::Q, &one),
                MPoly::from_int(odd_double_factorial(n) as i64),
            ),
            (
                "E(p,0)",
                e.substitute(Var::Q, &MPoly::zero()),
                MPoly::var_pow(Var::P, n as u16).mul_scalar(&factorial(n)),
            ),
            (
                "E(1,-1)",
                e.substitute(Var::P, &one)
                    .substitute(Var::Q, &MPoly::from_int(-1)),
                MPoly::one(),
            ),
            (
                "E(-1,1)",
                e.substitute(Var::P, &MPoly::from_int(-1))
                    .substitute(Var::Q, &one),
                MPoly::from_int(if n % 2 == 0 { 1 } else { -1 }),
            ),
        ];
        for (label, got, want) in checks {
            if got != want {
                return Ok(VerifyResult::fail(
                    id,
                    format!("n={n}"),
                    Side::Poly(got),
                    Side::Poly(want),
                    format!("special value {label}"),
                ));
            }
        }
        last = Some(VerifyResult::pass(
            id,
            format!("n={n}"),
            Side::Poly(e.clone()),
            Side::Poly(e),
        ));
    }
    Ok(last.expect("nonempty sweep"))
}

fn cycle_form_transfer(params: &VerifyParams) -> Result<VerifyResult, VerifyError> {
    let id = Identity::CycleFormTransfer;
    let ns = sweep(params.n, 6);
    let lhs_spec = WeightSpec::new()
        .var(Var::Q, StatName::Lrmin)
        .var(Var::X, StatName::Ap)
        .var(Var::Y, StatName::Bk2);
    let rhs_spec = WeightSpec::new()
        .var(Var::Q, StatName::Cyc)
        .var(Var::X, StatName::Cap)
        .var(Var::Y, StatName::Fix);
    let mut last = None;
    for &n in &ns {
        let lhs = dist_poly(ObjClass::Stirling, n, &lhs_spec)?;
        let rhs = dist_poly(ObjClass::CycleStirling, n, &rhs_spec)?;
        let res = poly_check(id, format!("n={n}"), lhs, rhs, &format!("n={n}"));
        if !res.pass {
            return Ok(res);
        }
        last = Some(res);
    }
    Ok(last.expect("nonempty sweep"))
}

fn cycle_form_egf_check(params: &VerifyParams) -> Result<VerifyResult, VerifyError> {
    let id = Identity::CycleFormEgf;
    let order = params.order.unwrap_or(7);
    let series = named::cycle_form_egf(order)?;
    let spec = WeightSpec::new()
        .var(Var::Q, StatName::Cyc)
        .var(Var::X, StatName::Cap)
        .var(Var::Y, StatName::Fix);
    for n in 0..=order {
        let lhs = dist_poly(ObjClass::CycleStirling, n, &spec)?;
        let rhs = series.egf_coeff(n);
        let res = poly_check(
            id,
            format!("order={order}"),
            lhs,
            rhs,
            &format!("EGF coefficient at t^{n}"),
        );
        if !res.pass {
            return Ok(res);
        }
    }
    // the singleton-block form over plain permutations
    let singles = named::block_singleton_egf(order)?;
    let perm_spec = WeightSpec::new()
        .var(Var::Q, StatName::Lrmin)
        .var(Var::X, StatName::Asc)
        .var(Var::Y, StatName::Fix);
    for n in 0..=order {
        let lhs = dist_poly(ObjClass::Perm, n, &perm_spec)?;
        let rhs = singles.egf_coeff(n);
        let res = poly_check(
            id,
            format!("order={order}"),
            lhs,
            rhs,
            &format!("singleton-block EGF coefficient at t^{n}"),
        );
        if !res.pass {
            return Ok(res);
        }
    }
    Ok(VerifyResult::pass(
        id,
        format!("order={order}"),
        Side::Series(series.clone()),
        Side::Series(series),
    ))
}

fn derangement_signed(params: &VerifyParams) -> Result<VerifyResult, VerifyError> {
    let id = Identity::DerangementSigned;
    let ns = sweep(params.n, 8);
    let max_n = *ns.iter().max().unwrap();
    let h = named::h_series(max_n.max(2))?;
    let spec = WeightSpec::new().sign(StatName::Ap);
    let mut last = None;
    for &n in &ns {
        let lhs = dist_poly(ObjClass::Derangement, n, &spec)?;
        let rhs = if n % 2 == 1 {
            MPoly::zero()
        } else {
            let k = n / 2;
            let hk = named::h_number(&h, k);
            let sign = if k % 2 == 0 { 1 } else { -1 };
            MPoly::constant(num_rational::BigRational::from_integer(hk * sign))
        };
        let res = poly_check(id, format!("n={n}"), lhs, rhs, &format!("n={n}"));
        if !res.pass {
            return Ok(res);
        }
        // tree-involution pairing confirms the cancellation
        if n <= 6 {
            if let Some(fail) = tree_pairing_confirmation(id, n)? {
                return Ok(fail);
            }
        }
        last = Some(res);
    }
    Ok(last.expect("nonempty sweep"))
}

/// Exhaustively confirm, over the derangement image in the trees, that the
/// branch-moving involution pairs off opposite ascent-plateau parities and
/// that its fixed trees are counted by the matching numbers. Also checks the
/// plateau/tree-shape correspondence over the full class.
fn tree_pairing_confirmation(id: Identity, n: usize) -> Result<Option<VerifyResult>, VerifyError> {
    let fail = |msg: String| {
        Some(VerifyResult::fail(
            id,
            format!("n={n}"),
            Side::Count(0),
            Side::Count(0),
            msg,
        ))
    };
    // value k is an ascent plateau iff node k is non-special without a left child
    for s in gen_stirling(n) {
        let rep = stats::stirling_stats(&s);
        let ap_set: Vec<Val> = rep.set(StatName::Ap).unwrap().to_vec();
        let t = maps::tree_of(&maps::phi(&s));
        let specials = t.special_labels();
        let mut shape: Vec<Val> = Vec::new();
        fn walk(node: &crate::objects::TreeNode, specials: &[Val], out: &mut Vec<Val>) {
            if node.left.is_none() && !specials.contains(&node.label) {
                out.push(node.label);
            }
            for c in [&node.left, &node.right].into_iter().flatten() {
                walk(c, specials, out);
            }
        }
        if let Some(root) = t.root() {
            walk(root, &specials, &mut shape);
        }
        shape.sort_unstable();
        if shape != ap_set {
            return Ok(fail(format!(
                "plateau set {ap_set:?} but left-childless non-special nodes {shape:?} for {s}"
            )));
        }
    }
    // pairing over the derangement image
    let mut complete = 0usize;
    for s in gen_stirling_derangements(n) {
        let ap = stats::ap_count(s.word());
        let t = maps::tree_of(&maps::phi(&s));
        match maps::tree_involution(&t) {
            Ok(other) => {
                if maps::tree_involution(&other).unwrap() != t {
                    return Ok(fail(format!("involution law broken at {s}")));
                }
                let back = maps::phi_inv(&maps::perm_of_tree(&other).unwrap()).unwrap();
                if stats::bk2_count(back.word()) != 0 {
                    return Ok(fail(format!("pair of {s} leaves the derangement class")));
                }
                let ap_other = stats::ap_count(back.word());
                if (ap + ap_other) % 2 != 1 {
                    return Ok(fail(format!("pair of {s} has equal plateau parity")));
                }
            }
            Err(maps::MapError::Complete) => {
                if n % 2 == 1 {
                    return Ok(fail(format!("odd order cannot have a fixed tree: {s}")));
                }
                if ap != n / 2 {
                    return Ok(fail(format!("fixed tree of {s} has {ap} plateaux")));
                }
                complete += 1;
            }
            Err(e) => return Ok(fail(format!("unexpected error {e}"))),
        }
    }
    if n % 2 == 0 {
        let h = named::h_series(n)?;
        let expected = named::h_number(&h, n / 2);
        if num_bigint::BigInt::from(complete) != expected {
            return Ok(fail(format!(
                "{complete} fixed trees, matching number says {expected}"
            )));
        }
    } else if complete != 0 {
        return Ok(fail(format!("{complete} fixed trees at odd order")));
    }
    Ok(None)
}

fn h_numbers(params: &VerifyParams) -> Result<VerifyResult, VerifyError> {
    let id = Identity::HNumbers;
    let ks = match params.n {
        Some(k) => {
            bounds(k <= 3, "matching sweeps go up to k=3")?;
            vec![k]
        }
        None => vec![1, 2, 3],
    };
    let max_k = *ks.iter().max().unwrap();
    let series = named::h_series(2 * max_k + 1)?;
    // even series
    for j in 0..max_k {
        if !series.coeff(2 * j + 1).is_zero() {
            return Ok(VerifyResult::fail(
                id,
                format!("k={max_k}"),
                Side::Series(series.clone()),
                Side::Count(0),
                format!("odd coefficient t^{} is nonzero", 2 * j + 1),
            ));
        }
    }
    let mut last = None;
    for &k in &ks {
        let count = gen_h_matchings(k).count() as i64;
        let from_series = named::h_number(&series, k);
        if num_bigint::BigInt::from(count) != from_series {
            return Ok(VerifyResult::fail(
                id,
                format!("k={k}"),
                Side::Count(count),
                Side::Count(0),
                format!("matching count {count} vs series {from_series}"),
            ));
        }
        last = Some(VerifyResult::pass(
            id,
            format!("k={k}"),
            Side::Count(count),
            Side::Count(count),
        ));
    }
    Ok(last.expect("nonempty sweep"))
}

/// The colored `(asc+1, desrlmin)` distribution with every right-to-left
/// minimum kept on the first color: per permutation, weight `r^(n - rlmin)`.
pub fn desrlmin_dist(n: usize, r: u32) -> Result<MPoly, VerifyError> {
    if n == 0 {
        return Ok(MPoly::one());
    }
    let spec = WeightSpec::new()
        .var_offset(Var::X, StatName::Asc, 1)
        .var(Var::Y, StatName::Desrlmin)
        .base_complement(r as i64, StatName::Rlmin);
    dist_poly(ObjClass::Perm, n, &spec)
}

fn colored_symmetry(params: &VerifyParams) -> Result<VerifyResult, VerifyError> {
    let id = Identity::ColoredSymmetry;
    let ns = sweep(params.n, 6);
    let rs: Vec<u32> = match params.r {
        Some(r) => vec![r],
        None => vec![1, 2, 3],
    };
    for &r in &rs {
        for &n in &ns {
            let f = desrlmin_dist(n, r)?;
            let swapped = f.swap_vars(Var::X, Var::Y);
            let res = poly_check(
                id,
                format!("r={r}, n={n}"),
                f.clone(),
                swapped,
                &format!("r={r}, n={n}"),
            );
            if !res.pass {
                return Ok(res);
            }
            // explicit colored enumeration cross-check at small sizes
            if r == 2 && n <= 5 {
                let colored = colored_enumeration(n, r);
                if colored != f {
                    let (m, a, b) = f.first_diff(&colored).unwrap();
                    return Ok(VerifyResult::fail(
                        id,
                        format!("r={r}, n={n}"),
                        Side::Poly(f),
                        Side::Poly(colored),
                        format!("weighted vs colored enumeration differ at {m}: {a} vs {b}"),
                    ));
                }
            }
        }
    }
    // the involution behind the symmetry, with its worked example
    let p = crate::objects::Perm::new(vec![2, 1, 4, 8, 5, 3, 6, 9, 7]).unwrap();
    let image = maps::psi(&p);
    if image.word() != [3, 1, 5, 7, 6, 2, 4, 9, 8] {
        return Ok(VerifyResult::fail(
            id,
            "example".into(),
            Side::Count(0),
            Side::Count(0),
            format!("worked example maps to {image}"),
        ));
    }
    let psi_n = params.n.unwrap_or(7);
    for p in gen_perms(psi_n) {
        let q = maps::psi(&p);
        let inv_ok = maps::psi(&q) == p;
        let law_ok = stats::asc_count(p.word()) + 1 == stats::desrlmin_count(q.word());
        if !inv_ok || !law_ok {
            return Ok(VerifyResult::fail(
                id,
                format!("n={psi_n}"),
                Side::Count(0),
                Side::Count(0),
                format!("involution law broken at {p}"),
            ));
        }
    }
    Ok(VerifyResult::pass(
        id,
        format!(
            "r={}, n<={}",
            rs.iter().map(u32::to_string).collect::<Vec<_>>().join(","),
            ns.iter().max().unwrap()
        ),
        Side::Count(1),
        Side::Count(1),
    ))
}

/// Direct enumeration over colored objects: color vectors over the
/// non-right-to-left-minimum positions.
fn colored_enumeration(n: usize, r: u32) -> MPoly {
    let mut out = MPoly::zero();
    for p in gen_perms(n) {
        let word = p.word();
        let free = word.len() - rlmin_positions(word).len();
        let a = stats::asc_count(word) + 1;
        let d = stats::desrlmin_count(word);
        let colorings = (r as i64).pow(free as u32);
        let mono = Mono([a as u16, d as u16, 0, 0, 0, 0]);
        out.add_term(mono, int(colorings));
    }
    out
}

fn desrlmin_exp(params: &VerifyParams) -> Result<VerifyResult, VerifyError> {
    let id = Identity::DesrlminExp;
    let order = params.order.unwrap_or(7);
    let series = named::desrlmin_g1(order)?;
    for n in 0..=order {
        let lhs = desrlmin_dist(n, 1)?;
        let rhs = series.egf_coeff(n);
        let res = poly_check(
            id,
            format!("order={order}"),
            lhs,
            rhs,
            &format!("EGF coefficient at t^{n}"),
        );
        if !res.pass {
            return Ok(res);
        }
    }
    Ok(VerifyResult::pass(
        id,
        format!("order={order}"),
        Side::Series(series.clone()),
        Side::Series(series),
    ))
}

fn desrlmin_root(params: &VerifyParams) -> Result<VerifyResult, VerifyError> {
    let id = Identity::DesrlminRoot;
    let order = params.order.unwrap_or(7);
    let rs: Vec<u32> = match params.r {
        Some(r) => vec![r],
        None => vec![1, 2, 3],
    };
    let mut last = None;
    for &r in &rs {
        let series = named::desrlmin_gr(order, r)?;
        for n in 0..=order {
            let lhs = desrlmin_dist(n, r)?;
            let rhs = series.egf_coeff(n);
            let res = poly_check(
                id,
                format!("r={r}, order={order}"),
                lhs,
                rhs,
                &format!("EGF coefficient at t^{n}"),
            );
            if !res.pass {
                return Ok(res);
            }
            last = Some(res);
        }
    }
    Ok(last.expect("nonempty sweep"))
}

fn cycle_equidist(params: &VerifyParams) -> Result<VerifyResult, VerifyError> {
    let id = Identity::CycleEquidist;
    let ns = sweep(params.n, 7);
    let lhs_spec = WeightSpec::new()
        .var(Var::Q, StatName::Lrmin)
        .var(Var::X, StatName::Asc);
    let rhs_spec = WeightSpec::new()
        .var(Var::Q, StatName::Cyc)
        .var(Var::X, StatName::Exc);
    let mut last = None;
    for &n in &ns {
        let lhs = dist_poly(ObjClass::Perm, n, &lhs_spec)?;
        let rhs = dist_poly(ObjClass::Perm, n, &rhs_spec)?;
        let res = poly_check(id, format!("n={n}"), lhs, rhs, &format!("n={n}"));
        if !res.pass {
            return Ok(res);
        }
        last = Some(res);
    }
    Ok(last.expect("nonempty sweep"))
}

fn set_of_blocks(params: &VerifyParams) -> Result<VerifyResult, VerifyError> {
    let id = Identity::SetOfBlocks;
    let order = params.order.unwrap_or(7);
    // EGF of the first-entry-minimal class, ascent-weighted
    let mut egf = vec![MPoly::zero(); order + 1];
    for (n, e) in egf.iter_mut().enumerate().skip(1) {
        let mut acc = MPoly::zero();
        for p in gen_perms(n) {
            if p.word()[0] == 1 {
                acc += &MPoly::var_pow(Var::X, stats::asc_count(p.word()) as u16);
            }
        }
        *e = acc;
    }
    let f = TSeries::from_egf(egf);
    let lhs = named::class_combinator(&f, named::Combinator::Set, 0)?;
    let rhs = named::eulerian_series(order);
    if lhs != rhs {
        let n = (0..=order)
            .find(|&n| lhs.coeff(n) != rhs.coeff(n))
            .expect("some coefficient differs");
        return Ok(VerifyResult::fail(
            id,
            format!("order={order}"),
            Side::Series(lhs),
            Side::Series(rhs),
            format!("coefficient of t^{n} differs"),
        ));
    }
    Ok(VerifyResult::pass(
        id,
        format!("order={order}"),
        Side::Series(lhs),
        Side::Series(rhs),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dist_poly_examples() {
        // order-2 Stirling permutations: 2p^2 + pq
        let e = evenodd_enumeration(2).unwrap();
        let expected = &MPoly::var_pow(Var::P, 2).mul_scalar(&int(2))
            + &(&MPoly::var(Var::P) * &MPoly::var(Var::Q));
        assert_eq!(e, expected);
        // 15 marked permutations of [3]
        let count = dist_poly(ObjClass::Marked(2), 3, &WeightSpec::new()).unwrap();
        assert_eq!(count, MPoly::from_int(15));
        // Eulerian enumeration over permutations of [3]
        let spec = WeightSpec::new().var(Var::X, StatName::Asc);
        let a3 = dist_poly(ObjClass::Perm, 3, &spec).unwrap();
        let expected =
            &(&MPoly::one() + &MPoly::var(Var::X).mul_scalar(&int(4))) + &MPoly::var_pow(Var::X, 2);
        assert_eq!(a3, expected);
    }

    #[test]
    fn unknown_statistic_is_an_error() {
        let spec = WeightSpec::new().var(Var::X, StatName::Ap);
        let err = dist_poly(ObjClass::Perm, 3, &spec).unwrap_err();
        assert!(matches!(err, VerifyError::UnknownStatistic { .. }));
    }

    #[test]
    fn stirling_marked_spot_value() {
        // both sides at n=2 equal q x (1 + y) + q^2
        let lhs_spec = WeightSpec::new()
            .var(Var::Q, StatName::Lrmin)
            .var(Var::X, StatName::Ap)
            .var(Var::Y, StatName::Even);
        let lhs = dist_poly(ObjClass::Stirling, 2, &lhs_spec).unwrap();
        let q = MPoly::var(Var::Q);
        let expected =
            &(&(&q * &MPoly::var(Var::X)) * &(&MPoly::one() + &MPoly::var(Var::Y))) + &q.pow(2);
        assert_eq!(lhs, expected);
    }

    #[test]
    fn evenodd_specials_at_order_3() {
        // E(1,1) = 15, E(p,0) = 6p^3, E(1,-1) = 1, E(-1,1) = -1
        let e = evenodd_enumeration(3).unwrap();
        let one = MPoly::one();
        assert_eq!(
            e.substitute(Var::P, &one).substitute(Var::Q, &one),
            MPoly::from_int(15)
        );
        assert_eq!(
            e.substitute(Var::Q, &MPoly::zero()),
            MPoly::var_pow(Var::P, 3).mul_scalar(&int(6))
        );
        assert_eq!(
            e.substitute(Var::P, &one)
                .substitute(Var::Q, &MPoly::from_int(-1)),
            MPoly::one()
        );
        assert_eq!(
            e.substitute(Var::P, &MPoly::from_int(-1))
                .substitute(Var::Q, &one),
            MPoly::from_int(-1)
        );
    }

    #[test]
    fn derangement_spot_value() {
        // order 2: both derangements have one plateau, signed sum -2 = -h_1
        let spec = WeightSpec::new().sign(StatName::Ap);
        let lhs = dist_poly(ObjClass::Derangement, 2, &spec).unwrap();
        assert_eq!(lhs, MPoly::from_int(-2));
    }

    #[test]
    fn small_identities_pass() {
        for id in [
            Identity::StirlingMarked,
            Identity::CycleFormTransfer,
            Identity::CycleEquidist,
        ] {
            for n in 1..=4 {
                let res = verify_identity(
                    id,
                    &VerifyParams {
                        n: Some(n),
                        ..Default::default()
                    },
                )
                .unwrap();
                assert!(res.pass, "{id:?} at n={n}: {:?}", res.witness);
            }
        }
    }

    #[test]
    fn series_identities_pass_at_low_order() {
        for id in [
            Identity::MarkedEgf,
            Identity::AscentPlateauEgf,
            Identity::CycleFormEgf,
            Identity::DesrlminExp,
            Identity::DesrlminRoot,
            Identity::SetOfBlocks,
        ] {
            let res = verify_identity(
                id,
                &VerifyParams {
                    order: Some(4),
                    ..Default::default()
                },
            )
            .unwrap();
            assert!(res.pass, "{id:?}: {:?}", res.witness);
        }
    }

    #[test]
    fn out_of_bounds_params_are_rejected() {
        let err = verify_identity(
            Identity::StirlingMarked,
            &VerifyParams {
                n: Some(12),
                ..Default::default()
            },
        )
        .unwrap_err();
        assert!(matches!(err, VerifyError::OutOfBounds(_)));
    }

    #[test]
    fn result_json_shape() {
        let res = verify_identity(
            Identity::HNumbers,
            &VerifyParams {
                n: Some(1),
                ..Default::default()
            },
        )
        .unwrap();
        let j = res.to_json();
        assert_eq!(j["identity"], "h-numbers");
        assert_eq!(j["status"], "pass");
    }
}
