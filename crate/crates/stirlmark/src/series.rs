//! Truncated power series in a distinguished variable `t` with sparse
//! polynomial coefficients.
//!
//! Storage is ordinary-coefficient: a series is `sum c_n t^n` for
//! `n = 0..=order`. The exponential view used by the generating-function
//! identities is derived, never stored: the EGF coefficient at `t^n` is
//! `c_n * n!`.
//!
//! Fractional powers are never taken through a rational-function field.
//! [`TSeries::pow_frac`] computes `f^(e/d)` as `exp(exact_div(e*log f, d))`,
//! so any failure of the divisibility assumption surfaces as a hard
//! `InexactDivision` error instead of a silently non-polynomial coefficient.

use crate::poly::{MPoly, PolyError, Var};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeriesError {
    /// inverse/log/sqrt need constant term 1; carries the offending term.
    ConstantTermNotOne(String),
    /// exp needs constant term 0; carries the offending term.
    ConstantTermNotZero(String),
    Poly(PolyError),
}

impl fmt::Display for SeriesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesError::ConstantTermNotOne(c) => {
                write!(f, "series constant term must be 1, found {c}")
            }
            SeriesError::ConstantTermNotZero(c) => {
                write!(f, "series constant term must be 0, found {c}")
            }
            SeriesError::Poly(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for SeriesError {}

impl From<PolyError> for SeriesError {
    fn from(e: PolyError) -> SeriesError {
        SeriesError::Poly(e)
    }
}

pub fn factorial(n: usize) -> BigRational {
    let mut f = BigInt::one();
    for k in 2..=n {
        f *= BigInt::from(k);
    }
    BigRational::from_integer(f)
}

/// Truncated power series `sum_{n=0}^{order} c_n t^n` with `MPoly`
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TSeries {
    coeffs: Vec<MPoly>,
}

impl TSeries {
    pub fn zero(order: usize) -> TSeries {
        TSeries {
            coeffs: vec![MPoly::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> TSeries {
        let mut s = TSeries::zero(order);
        s.coeffs[0] = MPoly::one();
        s
    }

    /// The series `t`, truncated at `order >= 1`.
    pub fn t(order: usize) -> TSeries {
        let mut s = TSeries::zero(order);
        if order >= 1 {
            s.coeffs[1] = MPoly::one();
        }
        s
    }

    /// Build from ordinary coefficients `c_0..=c_order`.
    pub fn from_ordinary(coeffs: Vec<MPoly>) -> TSeries {
        assert!(
            !coeffs.is_empty(),
            "a series has at least its constant term"
        );
        TSeries { coeffs }
    }

    /// Build from EGF coefficients `a_n`, storing `c_n = a_n / n!`.
    pub fn from_egf(coeffs: Vec<MPoly>) -> TSeries {
        let ord = coeffs
            .into_iter()
            .enumerate()
            .map(|(n, a)| a.div_scalar(&factorial(n)))
            .collect();
        TSeries::from_ordinary(ord)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Ordinary coefficient `c_n` (zero beyond the truncation order).
    pub fn coeff(&self, n: usize) -> MPoly {
        self.coeffs.get(n).cloned().unwrap_or_else(MPoly::zero)
    }

    /// EGF coefficient `a_n = c_n * n!`.
    pub fn egf_coeff(&self, n: usize) -> MPoly {
        self.coeff(n).mul_scalar(&factorial(n))
    }

    pub fn truncate(&self, order: usize) -> TSeries {
        let mut coeffs: Vec<MPoly> = self.coeffs.iter().take(order + 1).cloned().collect();
        coeffs.resize(order + 1, MPoly::zero());
        TSeries { coeffs }
    }

    fn same_order(&self, other: &TSeries) -> usize {
        assert_eq!(
            self.order(),
            other.order(),
            "series operands must share the truncation order"
        );
        self.order()
    }

    pub fn add(&self, other: &TSeries) -> TSeries {
        self.same_order(other);
        TSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &TSeries) -> TSeries {
        self.same_order(other);
        TSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> TSeries {
        TSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &TSeries) -> TSeries {
        let order = self.same_order(other);
        let mut out = TSeries::zero(order);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j > order {
                    break;
                }
                if b.is_zero() {
                    continue;
                }
                let prod = a * b;
                out.coeffs[i + j] += &prod;
            }
        }
        out
    }

    /// Multiply every coefficient by a fixed polynomial.
    pub fn mul_poly(&self, p: &MPoly) -> TSeries {
        TSeries {
            coeffs: self.coeffs.iter().map(|c| c * p).collect(),
        }
    }

    pub fn mul_scalar(&self, c: &BigRational) -> TSeries {
        TSeries {
            coeffs: self.coeffs.iter().map(|a| a.mul_scalar(c)).collect(),
        }
    }

    /// Substitution `t -> c * t`: the coefficient `c_n` picks up `c^n`.
    pub fn scale_t(&self, c: &MPoly) -> TSeries {
        let mut pow = MPoly::one();
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, a)| {
                if n > 0 {
                    pow = &pow * c;
                }
                a * &pow
            })
            .collect();
        TSeries { coeffs }
    }

    /// Substitute a polynomial for a variable in every coefficient.
    pub fn substitute(&self, v: Var, by: &MPoly) -> TSeries {
        TSeries {
            coeffs: self.coeffs.iter().map(|c| c.substitute(v, by)).collect(),
        }
    }

    /// Derivative d/dt, one order lower.
    pub fn derivative(&self) -> TSeries {
        if self.order() == 0 {
            return TSeries::zero(0);
        }
        let coeffs = (1..=self.order())
            .map(|n| self.coeffs[n].mul_scalar(&BigRational::from_integer(BigInt::from(n))))
            .collect();
        TSeries { coeffs }
    }

    fn require_constant_one(&self) -> Result<(), SeriesError> {
        if self.coeffs[0].is_one() {
            Ok(())
        } else {
            Err(SeriesError::ConstantTermNotOne(self.coeffs[0].to_string()))
        }
    }

    fn require_constant_zero(&self) -> Result<(), SeriesError> {
        if self.coeffs[0].is_zero() {
            Ok(())
        } else {
            Err(SeriesError::ConstantTermNotZero(self.coeffs[0].to_string()))
        }
    }

    /// Multiplicative inverse by direct recurrence; requires constant term 1.
    pub fn inverse(&self) -> Result<TSeries, SeriesError> {
        self.require_constant_one()?;
        let order = self.order();
        let mut out = TSeries::one(order);
        for n in 1..=order {
            // b_n = -sum_{k=1}^{n} a_k b_{n-k}
            let mut acc = MPoly::zero();
            for k in 1..=n {
                if self.coeffs[k].is_zero() {
                    continue;
                }
                acc += &(&self.coeffs[k] * &out.coeffs[n - k]);
            }
            out.coeffs[n] = -&acc;
        }
        Ok(out)
    }

    /// Logarithm; requires constant term 1.
    pub fn log(&self) -> Result<TSeries, SeriesError> {
        self.require_constant_one()?;
        let order = self.order();
        let mut out = TSeries::zero(order);
        for n in 1..=order {
            // L_n = a_n - (1/n) sum_{k=1}^{n-1} k L_k a_{n-k}
            let mut acc = MPoly::zero();
            for k in 1..n {
                if out.coeffs[k].is_zero() || self.coeffs[n - k].is_zero() {
                    continue;
                }
                let scaled = out.coeffs[k].mul_scalar(&BigRational::from_integer(BigInt::from(k)));
                acc += &(&scaled * &self.coeffs[n - k]);
            }
            out.coeffs[n] =
                &self.coeffs[n] - &acc.div_scalar(&BigRational::from_integer(BigInt::from(n)));
        }
        Ok(out)
    }

    /// Exponential; requires constant term 0.
    pub fn exp(&self) -> Result<TSeries, SeriesError> {
        self.require_constant_zero()?;
        let order = self.order();
        let mut out = TSeries::one(order);
        for n in 1..=order {
            // E_n = (1/n) sum_{k=1}^{n} k g_k E_{n-k}
            let mut acc = MPoly::zero();
            for k in 1..=n {
                if self.coeffs[k].is_zero() || out.coeffs[n - k].is_zero() {
                    continue;
                }
                let scaled = self.coeffs[k].mul_scalar(&BigRational::from_integer(BigInt::from(k)));
                acc += &(&scaled * &out.coeffs[n - k]);
            }
            out.coeffs[n] = acc.div_scalar(&BigRational::from_integer(BigInt::from(n)));
        }
        Ok(out)
    }

    /// Square root as `exp(log(f)/2)`; requires constant term 1.
    pub fn sqrt(&self) -> Result<TSeries, SeriesError> {
        let half_log = self
            .log()?
            .mul_scalar(&BigRational::new(BigInt::from(1), BigInt::from(2)));
        half_log.exp()
    }

    /// Square root by the direct recurrence; agrees with [`TSeries::sqrt`]
    /// on its whole domain and serves as its independent cross-check.
    pub fn sqrt_by_recurrence(&self) -> Result<TSeries, SeriesError> {
        self.require_constant_one()?;
        let order = self.order();
        let mut out = TSeries::one(order);
        for n in 1..=order {
            // (s^2)_n = 2 s_n + sum_{k=1}^{n-1} s_k s_{n-k} = f_n
            let mut acc = MPoly::zero();
            for k in 1..n {
                acc += &(&out.coeffs[k] * &out.coeffs[n - k]);
            }
            out.coeffs[n] = (&self.coeffs[n] - &acc).div_scalar(&crate::poly::int(2));
        }
        Ok(out)
    }

    /// `f^(e/d)` through the all-polynomial path
    /// `exp(exact_div(e * log f, d))`; requires constant term 1 and exact
    /// divisibility of every coefficient of `e * log f` by `d`.
    pub fn pow_frac(&self, exponent: &MPoly, divisor: &MPoly) -> Result<TSeries, SeriesError> {
        let scaled = self.log()?.mul_poly(exponent);
        let coeffs = scaled
            .coeffs
            .iter()
            .map(|c| c.exact_div(divisor))
            .collect::<Result<Vec<_>, _>>()?;
        TSeries::from_ordinary(coeffs).exp()
    }

    /// Integer power by repeated multiplication.
    pub fn pow(&self, e: u32) -> TSeries {
        let mut out = TSeries::one(self.order());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                out = out.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        out
    }

    /// One line per t-degree: `t^n: <ordinary coefficient>`.
    pub fn print_lines(&self) -> String {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| format!("t^{n}: {c}"))
            .collect::<Vec<_>>()
            .join("\n")
    }

    /// Same layout with the derived EGF coefficients `c_n * n!`.
    pub fn print_lines_egf(&self) -> String {
        (0..=self.order())
            .map(|n| format!("t^{n}: {}", self.egf_coeff(n)))
            .collect::<Vec<_>>()
            .join("\n")
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "order": self.order(),
            "coeffs": self.coeffs.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for TSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.print_lines())
    }
}
