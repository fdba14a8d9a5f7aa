//! Laurent polynomials in one variable `z` over the rationals.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::rational::{fmt_q, pow_i, Q};
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, Q>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Q::one(), 0)
    }

    pub fn constant(c: Q) -> Self {
        Self::monomial(c, 0)
    }

    /// `c z^k`.
    pub fn monomial(c: Q, k: i64) -> Self {
        let mut f = Self::zero();
        f.add_term(k, c);
        f
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, Q)>) -> Self {
        let mut f = Self::zero();
        for (k, c) in terms {
            f.add_term(k, c);
        }
        f
    }

    pub fn add_term(&mut self, k: i64, c: Q) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(k).or_insert_with(Q::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, k: i64) -> Q {
        self.coeffs.get(&k).cloned().unwrap_or_else(Q::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Q)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// `f(z^{-1})`.
    pub fn bar(&self) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(k, c)| (-k, c.clone())).collect(),
        }
    }

    /// `z^k f`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(k, x)| (*k, x * c)).collect(),
        }
    }

    pub fn eval(&self, point: &Q) -> Result<Q, Error> {
        if point.is_zero() {
            return Err(Error::ZeroEvaluationPoint);
        }
        Ok(self.coeffs.iter().map(|(k, c)| c * pow_i(point, *k)).sum())
    }

    /// Dense coefficients `[c_lo, ..., c_hi]` of `z^{-lo} f`, where `lo` is the lowest exponent.
    pub fn to_dense(&self) -> Vec<Q> {
        let (Some(lo), Some(hi)) = (self.min_exp(), self.max_exp()) else {
            return Vec::new();
        };
        (lo..=hi).map(|k| self.coeff(k)).collect()
    }
}

pub fn lp_eval(f: &LaurentPoly, point: &Q) -> Result<Q, Error> {
    f.eval(point)
}

pub fn lp_bar(f: &LaurentPoly) -> LaurentPoly {
    f.bar()
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (k, c) in &rhs.coeffs {
            out.add_term(*k, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (k, c) in &rhs.coeffs {
            out.add_term(*k, -c);
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (a, x) in &self.coeffs {
            for (b, y) in &rhs.coeffs {
                out.add_term(a + b, x * y);
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.coeffs.iter().enumerate() {
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            let a = c.abs();
            let var = match k {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{k}"),
            };
            match (a.is_one(), var.is_empty()) {
                (true, true) => write!(f, "1")?,
                (true, false) => write!(f, "{var}")?,
                (false, true) => write!(f, "{}", fmt_q(&a))?,
                (false, false) => write!(f, "{}*{var}", fmt_q(&a))?,
            }
        }
        Ok(())
    }
}
