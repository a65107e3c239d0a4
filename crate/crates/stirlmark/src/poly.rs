//! Sparse multivariate polynomials over arbitrary-precision rationals.
//!
//! The coefficient ring of every enumerative polynomial and every series
//! coefficient in this crate. The variable universe is fixed to the six
//! variables that occur in the identities (`x`, `y`, `z`, `q`, `p`, `r`);
//! exponent vectors are stored densely in that canonical order, which also
//! fixes the wire format and the printing order.
//!
//! Invariant: no stored term has a zero coefficient, so structural equality
//! of the term maps is polynomial equality.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

/// Number of variables in the fixed universe.
pub const NVARS: usize = 6;

/// A variable of the polynomial ring, in canonical order `x,y,z,q,p,r`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Var {
    X,
    Y,
    Z,
    Q,
    P,
    R,
}

impl Var {
    pub const ALL: [Var; NVARS] = [Var::X, Var::Y, Var::Z, Var::Q, Var::P, Var::R];

    pub fn index(self) -> usize {
        match self {
            Var::X => 0,
            Var::Y => 1,
            Var::Z => 2,
            Var::Q => 3,
            Var::P => 4,
            Var::R => 5,
        }
    }

    pub fn name(self) -> &'static str {
        ["x", "y", "z", "q", "p", "r"][self.index()]
    }

    pub fn from_name(s: &str) -> Option<Var> {
        Var::ALL.iter().copied().find(|v| v.name() == s)
    }
}

/// Monomial as a dense exponent vector in canonical variable order.
///
/// The derived `Ord` is lexicographic with `x` most significant; the maximal
/// key of a term map is therefore the leading monomial used by the division
/// algorithm.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Mono(pub [u16; NVARS]);

impl Mono {
    pub fn one() -> Mono {
        Mono::default()
    }

    pub fn var(v: Var) -> Mono {
        Mono::var_pow(v, 1)
    }

    pub fn var_pow(v: Var, e: u16) -> Mono {
        let mut m = [0u16; NVARS];
        m[v.index()] = e;
        Mono(m)
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn exponent(&self, v: Var) -> u16 {
        self.0[v.index()]
    }

    fn mul(&self, other: &Mono) -> Mono {
        let mut m = [0u16; NVARS];
        for i in 0..NVARS {
            m[i] = self.0[i]
                .checked_add(other.0[i])
                .expect("monomial exponent overflow");
        }
        Mono(m)
    }

    fn divides(&self, other: &Mono) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// Quotient `other / self`; caller must ensure divisibility.
    fn div_into(&self, other: &Mono) -> Mono {
        let mut m = [0u16; NVARS];
        for i in 0..NVARS {
            m[i] = other.0[i] - self.0[i];
        }
        Mono(m)
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        for v in Var::ALL {
            let e = self.exponent(v);
            if e == 1 {
                write!(f, "{}", v.name())?;
            } else if e > 1 {
                write!(f, "{}^{}", v.name(), e)?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyError {
    /// `exact_div` was asked for a quotient that does not exist in the ring.
    InexactDivision(String),
    DivisionByZero,
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::InexactDivision(what) => write!(f, "inexact division: {what}"),
            PolyError::DivisionByZero => write!(f, "division by zero polynomial"),
        }
    }
}

impl std::error::Error for PolyError {}

/// Sparse multivariate polynomial over `BigRational`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MPoly {
    terms: BTreeMap<Mono, BigRational>,
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl MPoly {
    pub fn zero() -> MPoly {
        MPoly::default()
    }

    pub fn one() -> MPoly {
        MPoly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> MPoly {
        let mut p = MPoly::zero();
        p.add_term(Mono::one(), c);
        p
    }

    pub fn from_int(n: i64) -> MPoly {
        MPoly::constant(int(n))
    }

    pub fn var(v: Var) -> MPoly {
        MPoly::var_pow(v, 1)
    }

    pub fn var_pow(v: Var, e: u16) -> MPoly {
        let mut p = MPoly::zero();
        p.add_term(Mono::var_pow(v, e), BigRational::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.coeff(&Mono::one()).is_one()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Mono) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn constant_term(&self) -> BigRational {
        self.coeff(&Mono::one())
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Mono::total_degree).max().unwrap_or(0)
    }

    /// Add `c` to the coefficient of `m`, dropping the term if it cancels.
    pub fn add_term(&mut self, m: Mono, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn mul_scalar(&self, c: &BigRational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    /// Scalar division; always exact over the rationals.
    pub fn div_scalar(&self, c: &BigRational) -> MPoly {
        assert!(!c.is_zero(), "scalar division by zero");
        self.mul_scalar(&c.recip())
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut result = MPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        result
    }

    fn leading(&self) -> Option<(&Mono, &BigRational)> {
        self.terms.last_key_value()
    }

    /// Exact polynomial division by a single divisor. Returns the quotient
    /// when `self = q * d` in the ring, otherwise `InexactDivision`.
    pub fn exact_div(&self, d: &MPoly) -> Result<MPoly, PolyError> {
        if d.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let (dm, dc) = d.leading().expect("nonzero divisor has a leading term");
        let mut rem = self.clone();
        let mut quot = MPoly::zero();
        while let Some((rm, rc)) = rem.leading() {
            if !dm.divides(rm) {
                return Err(PolyError::InexactDivision(format!(
                    "{self} is not divisible by {d} (stuck at term {rc}*{rm})"
                )));
            }
            let qm = dm.div_into(rm);
            let qc = rc / dc;
            let mut piece = MPoly::zero();
            piece.add_term(qm, qc.clone());
            rem = &rem - &(&piece * d);
            quot.add_term(qm, qc);
        }
        Ok(quot)
    }

    /// Substitute a polynomial for a variable.
    pub fn substitute(&self, v: Var, by: &MPoly) -> MPoly {
        let i = v.index();
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let e = m.0[i];
            let mut rest = *m;
            rest.0[i] = 0;
            let mut piece = MPoly::zero();
            piece.add_term(rest, c.clone());
            if e > 0 {
                piece = &piece * &by.pow(e as u32);
            }
            out += &piece;
        }
        out
    }

    /// Exchange two variables everywhere.
    pub fn swap_vars(&self, a: Var, b: Var) -> MPoly {
        let (i, j) = (a.index(), b.index());
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let mut e = *m;
            e.0.swap(i, j);
            out.add_term(e, c.clone());
        }
        out
    }

    /// First differing monomial against `other`, lexicographically smallest,
    /// with both coefficients. `None` means the polynomials are equal.
    pub fn first_diff(&self, other: &MPoly) -> Option<(Mono, BigRational, BigRational)> {
        let mut monos: Vec<&Mono> = self.terms.keys().chain(other.terms.keys()).collect();
        monos.sort();
        monos.dedup();
        for m in monos {
            let a = self.coeff(m);
            let b = other.coeff(m);
            if a != b {
                return Some((*m, a, b));
            }
        }
        None
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(m, c)| {
                serde_json::json!({
                    "exp": m.0.to_vec(),
                    "coeff": c.to_string(),
                })
            })
            .collect();
        serde_json::json!({
            "vars": Var::ALL.iter().map(|v| v.name()).collect::<Vec<_>>(),
            "terms": terms,
        })
    }
}

impl From<i64> for MPoly {
    fn from(n: i64) -> MPoly {
        MPoly::from_int(n)
    }
}

impl AddAssign<&MPoly> for MPoly {
    fn add_assign(&mut self, rhs: &MPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else if abs.is_integer() {
                write!(f, "{abs}{m}")?;
            } else {
                write!(f, "({abs}){m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> MPoly {
        MPoly::var(Var::X)
    }

    fn y() -> MPoly {
        MPoly::var(Var::Y)
    }

    #[test]
    fn difference_of_squares() {
        let a = &x() + &MPoly::one();
        let b = &x() - &MPoly::one();
        let prod = &a * &b;
        let expected = &MPoly::var_pow(Var::X, 2) - &MPoly::one();
        assert_eq!(prod, expected);
    }

    #[test]
    fn exact_div_common_factor() {
        // (x^2 y + x y) / x = x y + y
        let num = &(&MPoly::var_pow(Var::X, 2) * &y()) + &(&x() * &y());
        let quot = num.exact_div(&x()).unwrap();
        let expected = &(&x() * &y()) + &y();
        assert_eq!(quot, expected);
    }

    #[test]
    fn additive_identity() {
        // 2p^2 + pq + 0 = 2p^2 + pq
        let p2 = MPoly::var_pow(Var::P, 2).mul_scalar(&int(2));
        let pq = &MPoly::var(Var::P) * &MPoly::var(Var::Q);
        let e = &p2 + &pq;
        assert_eq!(&e + &MPoly::zero(), e);
    }

    #[test]
    fn inexact_division_is_an_error() {
        let num = &x() + &MPoly::one();
        let err = num.exact_div(&y()).unwrap_err();
        assert!(matches!(err, PolyError::InexactDivision(_)));
    }

    #[test]
    fn division_by_one_plus_y() {
        // q (1+y)^3 / (1+y) = q (1+y)^2
        let one_plus_y = &MPoly::one() + &y();
        let q = MPoly::var(Var::Q);
        let num = &q * &one_plus_y.pow(3);
        let quot = num.exact_div(&one_plus_y).unwrap();
        assert_eq!(quot, &q * &one_plus_y.pow(2));
    }

    #[test]
    fn substitution_replaces_variable() {
        // (z^2 + z) with z := x y gives x^2 y^2 + x y
        let zp = &MPoly::var_pow(Var::Z, 2) + &MPoly::var(Var::Z);
        let xy = &x() * &y();
        let out = zp.substitute(Var::Z, &xy);
        assert_eq!(out, &(&xy * &xy) + &xy);
    }

    #[test]
    fn swap_vars_symmetry_probe() {
        let p = &(&MPoly::var_pow(Var::X, 2) * &y()) + &(&x() * &MPoly::var_pow(Var::Y, 2));
        assert_eq!(p.swap_vars(Var::X, Var::Y), p);
        let lop = &MPoly::var_pow(Var::X, 2) * &y();
        assert_ne!(lop.swap_vars(Var::X, Var::Y), lop);
    }

    #[test]
    fn display_is_deterministic() {
        let p2 = MPoly::var_pow(Var::P, 2).mul_scalar(&int(2));
        let pq = &MPoly::var(Var::P) * &MPoly::var(Var::Q);
        let e = &p2 + &pq;
        assert_eq!(e.to_string(), "2p^2 + qp");
    }

    #[test]
    fn first_diff_reports_smallest_monomial() {
        let a = &x() + &y();
        let b = &x() + &MPoly::var_pow(Var::Y, 2);
        let (m, ca, cb) = a.first_diff(&b).unwrap();
        assert_eq!(m, Mono::var(Var::Y));
        assert!(ca.is_one() && cb.is_zero());
        assert!(a.first_diff(&a).is_none());
    }
}
