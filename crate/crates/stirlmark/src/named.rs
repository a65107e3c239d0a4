//! The named generating functions, built from the series primitives and
//! small exhaustive enumerations.
//!
//! Everything is kept polynomial: the Eulerian EGF is produced through a
//! geometric-series factorization rather than a rational function, and all
//! fractional powers go through the exact-divisibility path of
//! [`TSeries::pow_frac`].

use crate::generate::gen_perms;
use crate::poly::{int, MPoly, Var};
use crate::series::{SeriesError, TSeries};
use crate::stats::{asc_count, des_count};
use num_rational::BigRational;
use std::collections::HashMap;

/// EGF of the Eulerian polynomials: `a_n(x) = sum over permutations of [n]
/// of x^asc`, with `a_0 = 1`.
///
/// Computed without rational functions: with
/// `u = sum_{n>=1} (x-1)^(n-1) t^n / n!` the series equals `1/(1-u)`,
/// a geometric inverse with polynomial coefficients.
pub fn eulerian_series(order: usize) -> TSeries {
    let x_minus_1 = &MPoly::var(Var::X) - &MPoly::one();
    let mut u_coeffs = vec![MPoly::zero(); order + 1];
    let mut pow = MPoly::one();
    for (n, c) in u_coeffs.iter_mut().enumerate().skip(1) {
        // (x-1)^(n-1) / n!
        *c = pow.div_scalar(&crate::series::factorial(n));
        pow = &pow * &x_minus_1;
    }
    let u = TSeries::from_ordinary(u_coeffs);
    TSeries::one(order)
        .sub(&u)
        .inverse()
        .expect("constant term is 1 by construction")
}

/// Bivariate ascent/descent distribution with boundary weights:
/// `sum over permutations of [m] of x^(asc+1) y^(des+1)`, the weight of a
/// block of size `m+1` in the rl-block decomposition.
fn block_weight_poly(m: usize) -> MPoly {
    let mut counts: HashMap<(usize, usize), i64> = HashMap::new();
    for p in gen_perms(m) {
        let a = asc_count(p.word());
        let d = des_count(p.word());
        *counts.entry((a + 1, d + 1)).or_insert(0) += 1;
    }
    let mut out = MPoly::zero();
    for ((a, d), c) in counts {
        let m = crate::poly::Mono([a as u16, d as u16, 0, 0, 0, 0]);
        out.add_term(m, int(c));
    }
    out
}

/// Refined Eulerian generating function `A(x,y,z,t)`: the EGF coefficient at
/// `t` is `z` and at `t^n` (n >= 2) it is the ascent/descent distribution
/// `sum over permutations of [n-1] of x^(asc+1) y^(des+1)`, computed by
/// enumeration. Substituting `z := xy` makes `exp(A(x,y,xy,t))` the EGF of
/// the bivariate `(asc+1, desrlmin)` distribution over permutations.
pub fn refined_eulerian(order: usize) -> TSeries {
    let mut egf = vec![MPoly::zero(); order + 1];
    if order >= 1 {
        egf[1] = MPoly::var(Var::Z);
    }
    for (n, e) in egf.iter_mut().enumerate().skip(2) {
        *e = block_weight_poly(n - 1);
    }
    TSeries::from_egf(egf)
}

/// EGF of the ascent-plateau polynomials over Stirling permutations: the
/// square root of the Eulerian EGF at doubled argument.
pub fn ascent_plateau_series(order: usize) -> Result<TSeries, SeriesError> {
    eulerian_series(order)
        .scale_t(&MPoly::from_int(2))
        .pow_frac(&MPoly::one(), &MPoly::from_int(2))
}

/// Trivariate EGF of marked permutations weighted `q^lrmin x^asc y^mark`:
/// the Eulerian EGF at argument `t(1+y)` raised to the exact fractional
/// power `q/(1+y)`. Every log coefficient carries the factor `(1+y)^n`, so
/// the division is exact and all coefficients stay polynomial.
pub fn marked_egf(order: usize) -> Result<TSeries, SeriesError> {
    let one_plus_y = &MPoly::one() + &MPoly::var(Var::Y);
    eulerian_series(order)
        .scale_t(&one_plus_y)
        .pow_frac(&MPoly::var(Var::Q), &one_plus_y)
}

/// Trivariate EGF of the cycle form weighted `q^cyc x^cap y^fix`:
/// `A(x,2t)^(q/2) e^(qt(y-1))`, i.e.
/// `exp(q ((1/2) log A(x,2t) + t(y-1)))`.
///
/// The blocks of a Stirling permutation form a set whose one-block class has
/// EGF `(1/2) log A(x,2t)` (the logarithm of the ascent-plateau EGF), with
/// the size-1 blocks re-weighted by `y`; transferring lrmin/ap/size-1-blocks
/// to cyc/cap/fix gives this closed form for the second kind.
pub fn cycle_form_egf(order: usize) -> Result<TSeries, SeriesError> {
    let half_log = eulerian_series(order)
        .scale_t(&MPoly::from_int(2))
        .log()?
        .mul_scalar(&crate::poly::rat(1, 2));
    let mut shift = TSeries::zero(order);
    if order >= 1 {
        let y_minus_1 = &MPoly::var(Var::Y) - &MPoly::one();
        shift = shift.add(&TSeries::t(order).mul_poly(&y_minus_1));
    }
    half_log.add(&shift).mul_poly(&MPoly::var(Var::Q)).exp()
}

/// Trivariate EGF of plain permutations weighted
/// `q^lrmin x^asc y^(number of size-1 blocks)`:
/// `(A(x,t) e^(t(y-1)))^q`. The same set-of-blocks argument at singleton
/// scale: `exp(f) = A(x,t)` for the first-entry-minimal class `f`, and the
/// `y` weight retunes its first-order term.
pub fn block_singleton_egf(order: usize) -> Result<TSeries, SeriesError> {
    let log_a = eulerian_series(order).log()?;
    let mut shift = TSeries::zero(order);
    if order >= 1 {
        let y_minus_1 = &MPoly::var(Var::Y) - &MPoly::one();
        shift = shift.add(&TSeries::t(order).mul_poly(&y_minus_1));
    }
    log_a.add(&shift).mul_poly(&MPoly::var(Var::Q)).exp()
}

/// Even series whose `t^(2k)` EGF-style coefficient carries the matching
/// numbers `h_k`: the square root of `1/cosh(2t)`, all coefficients exact
/// rationals. `h_k = (-1)^k (2k)! [t^(2k)]`.
pub fn h_series(order: usize) -> Result<TSeries, SeriesError> {
    let mut cosh = vec![MPoly::zero(); order + 1];
    for (n, c) in cosh.iter_mut().enumerate() {
        if n % 2 == 0 {
            // 2^n / n!
            let num = BigRational::from_integer(num_bigint::BigInt::from(2).pow(n as u32));
            *c = MPoly::constant(num / crate::series::factorial(n));
        }
    }
    TSeries::from_ordinary(cosh)
        .inverse()?
        .pow_frac(&MPoly::one(), &MPoly::from_int(2))
}

/// Recover `h_k = (-1)^k (2k)! [t^(2k)]` from [`h_series`] as an exact
/// integer.
pub fn h_number(series: &TSeries, k: usize) -> num_bigint::BigInt {
    let c = series.coeff(2 * k).constant_term();
    let sign = if k % 2 == 0 { 1 } else { -1 };
    let v = c * crate::series::factorial(2 * k) * crate::poly::int(sign);
    assert!(v.is_integer(), "matching numbers are integers");
    v.to_integer()
}

/// Bivariate EGF of the `(asc+1, desrlmin)` distribution:
/// `exp(A(x,y,xy,t))`.
pub fn desrlmin_g1(order: usize) -> Result<TSeries, SeriesError> {
    let xy = &MPoly::var(Var::X) * &MPoly::var(Var::Y);
    refined_eulerian(order).substitute(Var::Z, &xy).exp()
}

/// Colored generalization: `G_r(x,y,t) = G_1(x,y,rt)^(1/r)`, the EGF of the
/// `(asc+1, desrlmin)` distribution with weight `r^(n - rlmin)` (every
/// right-to-left minimum keeps the first color).
pub fn desrlmin_gr(order: usize, r: u32) -> Result<TSeries, SeriesError> {
    assert!(r >= 1, "r is a positive integer");
    desrlmin_g1(order)?
        .scale_t(&MPoly::from_int(r as i64))
        .pow_frac(&MPoly::one(), &MPoly::from_int(r as i64))
}

/// The named series exposed on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesName {
    /// `A(x,t)`, Eulerian EGF
    Eulerian,
    /// `A(x,y,z,t)`, refined by descents with a generic first-order term
    RefinedEulerian,
    /// `sqrt(A(x,2t))`, ascent plateaux over Stirling permutations
    AscentPlateau,
    /// `A(x,t(1+y))^(q/(1+y))`, marked permutations
    Marked,
    /// `(A(x,t) e^(t(y-1)))^q`, cycle form
    CycleForm,
    /// `sqrt(sech(2t))`, matching numbers
    HNumbers,
    /// `exp(A(x,y,xy,t))`
    G1,
    /// `G1(x,y,rt)^(1/r)`
    Gr,
}

impl SeriesName {
    pub const ALL: [SeriesName; 8] = [
        SeriesName::Eulerian,
        SeriesName::RefinedEulerian,
        SeriesName::AscentPlateau,
        SeriesName::Marked,
        SeriesName::CycleForm,
        SeriesName::HNumbers,
        SeriesName::G1,
        SeriesName::Gr,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SeriesName::Eulerian => "eulerian",
            SeriesName::RefinedEulerian => "refined-eulerian",
            SeriesName::AscentPlateau => "ascent-plateau",
            SeriesName::Marked => "marked",
            SeriesName::CycleForm => "cycle-form",
            SeriesName::HNumbers => "h-numbers",
            SeriesName::G1 => "g1",
            SeriesName::Gr => "gr",
        }
    }

    pub fn from_name(s: &str) -> Option<SeriesName> {
        SeriesName::ALL.into_iter().find(|x| x.name() == s)
    }
}

/// Build a named series at the given truncation order; `r` is only read for
/// [`SeriesName::Gr`].
pub fn named_series(name: SeriesName, order: usize, r: u32) -> Result<TSeries, SeriesError> {
    match name {
        SeriesName::Eulerian => Ok(eulerian_series(order)),
        SeriesName::RefinedEulerian => Ok(refined_eulerian(order)),
        SeriesName::AscentPlateau => ascent_plateau_series(order),
        SeriesName::Marked => marked_egf(order),
        SeriesName::CycleForm => cycle_form_egf(order),
        SeriesName::HNumbers => h_series(order),
        SeriesName::G1 => desrlmin_g1(order),
        SeriesName::Gr => desrlmin_gr(order, r),
    }
}

// ---------------------------------------------------------------------------
// Combinatorial-class combinators
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Combinator {
    /// atoms weighted by one of `k` colors: `f(x, kt)`
    WeightK,
    /// `k`-sequences: `f^k`
    SeqK,
    /// `k`-sets: `f^k / k!`
    SetK,
    /// sequences of any length: `1/(1-f)`
    Seq,
    /// sets of any length: `exp(f)`
    Set,
    /// all atoms but a distinguished one weighted: `f(x, kt) / k`
    PointWeight,
}

/// Generating-function combinators for weighted, sequence and set
/// constructions. `Seq`, `Set` and `PointWeight` require a class without
/// size-0 objects (zero constant term); `PointWeight` requires `k >= 1`.
pub fn class_combinator(f: &TSeries, op: Combinator, k: u32) -> Result<TSeries, SeriesError> {
    let kc = MPoly::from_int(k as i64);
    match op {
        Combinator::WeightK => Ok(f.scale_t(&kc)),
        Combinator::SeqK => Ok(f.pow(k)),
        Combinator::SetK => Ok(f
            .pow(k)
            .mul_scalar(&crate::series::factorial(k as usize).recip())),
        Combinator::Seq => {
            require_no_size_zero(f)?;
            TSeries::one(f.order()).sub(f).inverse()
        }
        Combinator::Set => {
            require_no_size_zero(f)?;
            f.exp()
        }
        Combinator::PointWeight => {
            require_no_size_zero(f)?;
            assert!(k >= 1, "point weighting needs at least one weight");
            Ok(f.scale_t(&kc).mul_scalar(&crate::poly::rat(1, k as i64)))
        }
    }
}

fn require_no_size_zero(f: &TSeries) -> Result<(), SeriesError> {
    if f.coeff(0).is_zero() {
        Ok(())
    } else {
        Err(SeriesError::ConstantTermNotZero(f.coeff(0).to_string()))
    }
}
