//! Laurent polynomials in s = y^{1/2} over the Gaussian rationals.
//!
//! Every q-coefficient in this crate is one of these. Exponents are exponents
//! of s, so y^k sits at s-exponent 2k and the theta prefactor
//! y^{1/2} + y^{-1/2} at s-exponents +1/-1. Working in s keeps half-integer
//! powers of y exact; the derivable [`Parity`] tells whether a value is an
//! honest Laurent polynomial in y.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::error::{SeriesError, SeriesResult};
use crate::rational::GaussianRational;

/// s-exponent parity of a [`HalfLaurent`]: even means integer powers of y.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Parity {
    Zero,
    Even,
    Odd,
    Mixed,
}

/// A finite Laurent polynomial in s = y^{1/2}. Zero coefficients are never
/// stored, so structural equality is exact.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct HalfLaurent {
    terms: BTreeMap<i64, GaussianRational>,
}

impl HalfLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::monomial(0, c)
    }

    /// The single term `c * s^s_exp`.
    pub fn monomial(s_exp: i64, c: GaussianRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(s_exp, c);
        }
        Self { terms }
    }

    /// The integer power `y^k`, i.e. `s^{2k}`.
    pub fn y_power(k: i64) -> Self {
        Self::monomial(2 * k, GaussianRational::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, GaussianRational)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (e, c) in iter {
            out.accumulate(e, &c);
        }
        out
    }

    fn accumulate(&mut self, e: i64, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(GaussianRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of `s^s_exp` (zero when absent).
    pub fn coefficient(&self, s_exp: i64) -> GaussianRational {
        self.terms.get(&s_exp).cloned().unwrap_or_else(GaussianRational::zero)
    }

    /// Coefficient of `y^k`, i.e. of `s^{2k}`.
    pub fn y_coefficient(&self, k: i64) -> GaussianRational {
        self.coefficient(2 * k)
    }

    /// Nonzero terms in ascending s-exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &GaussianRational)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn parity(&self) -> Parity {
        let mut even = false;
        let mut odd = false;
        for &e in self.terms.keys() {
            if e.rem_euclid(2) == 0 {
                even = true;
            } else {
                odd = true;
            }
        }
        match (even, odd) {
            (false, false) => Parity::Zero,
            (true, false) => Parity::Even,
            (false, true) => Parity::Odd,
            (true, true) => Parity::Mixed,
        }
    }

    /// True when coefficient(k) == coefficient(-k) for all k.
    pub fn is_palindromic(&self) -> bool {
        self.terms
            .iter()
            .all(|(&e, c)| self.terms.get(&-e) == Some(c))
    }

    /// All coefficients real with denominator 1.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&e, c) in &other.terms {
            out.accumulate(e, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&e, c) in &other.terms {
            out.accumulate(e, &(-c));
        }
        out
    }

    pub fn negated(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }

    /// Exact convolution product. Parity multiplies: even*even = even,
    /// even*odd = odd, odd*odd = even.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &other.terms {
                out.accumulate(e1 + e2, &(c1 * c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&e, t)| (e, t * c)).collect(),
        }
    }

    /// Multiply by `s^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(&e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// View as a polynomial in y: the list of (y-exponent, coefficient) pairs,
    /// ascending. Fails with `HalfIntegerPower` unless the parity is even.
    pub fn y_terms(&self) -> SeriesResult<Vec<(i64, GaussianRational)>> {
        match self.parity() {
            Parity::Zero | Parity::Even => {
                Ok(self.terms.iter().map(|(&e, c)| (e / 2, c.clone())).collect())
            }
            _ => Err(SeriesError::HalfIntegerPower),
        }
    }
}

impl Add for &HalfLaurent {
    type Output = HalfLaurent;
    fn add(self, rhs: &HalfLaurent) -> HalfLaurent {
        HalfLaurent::add(self, rhs)
    }
}

impl Sub for &HalfLaurent {
    type Output = HalfLaurent;
    fn sub(self, rhs: &HalfLaurent) -> HalfLaurent {
        HalfLaurent::sub(self, rhs)
    }
}

impl Mul for &HalfLaurent {
    type Output = HalfLaurent;
    fn mul(self, rhs: &HalfLaurent) -> HalfLaurent {
        HalfLaurent::mul(self, rhs)
    }
}

impl Neg for &HalfLaurent {
    type Output = HalfLaurent;
    fn neg(self) -> HalfLaurent {
        self.negated()
    }
}

impl fmt::Display for HalfLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // Integer powers of y print in y; anything else prints in s = y^{1/2}.
        let in_y = matches!(self.parity(), Parity::Even | Parity::Zero);
        let mut first = true;
        for (e, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let (var, exp) = if in_y { ("y", e / 2) } else { ("s", e) };
            match exp {
                0 => write!(f, "({})", c)?,
                1 => write!(f, "({}){}", c, var)?,
                _ => write!(f, "({}){}^{}", c, var, exp)?,
            }
        }
        Ok(())
    }
}

/// Canonical JSON term `{"s_exp": k, "re": "p/q", "im": "p/q"}`.
struct Term<'a>(i64, &'a GaussianRational);

impl Serialize for Term<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Term", 3)?;
        s.serialize_field("s_exp", &self.0)?;
        s.serialize_field("re", &self.1.re_string())?;
        s.serialize_field("im", &self.1.im_string())?;
        s.end()
    }
}

pub(crate) struct TermList<'a>(pub &'a HalfLaurent);

impl Serialize for TermList<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.0.num_terms()))?;
        for (e, c) in self.0.terms() {
            seq.serialize_element(&Term(e, c))?;
        }
        seq.end()
    }
}

impl Serialize for HalfLaurent {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("HalfLaurent", 1)?;
        s.serialize_field("coeffs", &TermList(self))?;
        s.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn theta_prefactor() -> HalfLaurent {
        // s + s^{-1}
        HalfLaurent::from_terms([
            (1, GaussianRational::one()),
            (-1, GaussianRational::one()),
        ])
    }

    /// Independent brute-force convolution on raw (exponent, value) pairs.
    fn convolve_oracle(
        a: &[(i64, i64)],
        b: &[(i64, i64)],
    ) -> Vec<(i64, i64)> {
        let mut acc: BTreeMap<i64, i64> = BTreeMap::new();
        for &(ea, ca) in a {
            for &(eb, cb) in b {
                *acc.entry(ea + eb).or_insert(0) += ca * cb;
            }
        }
        acc.into_iter().filter(|&(_, c)| c != 0).collect()
    }

    fn from_int_terms(terms: &[(i64, i64)]) -> HalfLaurent {
        HalfLaurent::from_terms(
            terms.iter().map(|&(e, c)| (e, GaussianRational::from_int(c))),
        )
    }

    #[test]
    fn square_of_theta_prefactor() {
        let p = theta_prefactor();
        let sq = p.mul(&p);
        // (s + s^{-1})^2 = s^2 + 2 + s^{-2} = y + 2 + y^{-1}
        let expected = convolve_oracle(&[(1, 1), (-1, 1)], &[(1, 1), (-1, 1)]);
        assert_eq!(expected, vec![(-2, 1), (0, 2), (2, 1)]);
        assert_eq!(sq, from_int_terms(&expected));
        assert_eq!(sq.parity(), Parity::Even);
        assert!(sq.is_palindromic());
    }

    #[test]
    fn mul_identity_and_zero() {
        let p = from_int_terms(&[(-3, 2), (0, 5), (4, -1)]);
        assert_eq!(p.mul(&HalfLaurent::one()), p);
        let z = theta_prefactor().sub(&theta_prefactor());
        assert!(z.is_zero());
        assert!(z.mul(&p).is_zero());
    }

    #[test]
    fn parity_multiplication_table() {
        let even = from_int_terms(&[(-2, 1), (2, 3)]);
        let odd = from_int_terms(&[(-1, 1), (3, 1)]);
        assert_eq!(even.mul(&even).parity(), Parity::Even);
        assert_eq!(even.mul(&odd).parity(), Parity::Odd);
        assert_eq!(odd.mul(&odd).parity(), Parity::Even);
        assert_eq!(HalfLaurent::zero().parity(), Parity::Zero);
        assert_eq!(from_int_terms(&[(0, 1), (1, 1)]).parity(), Parity::Mixed);
    }

    #[test]
    fn palindromic_product_stays_palindromic() {
        let a = from_int_terms(&[(-2, 3), (0, 1), (2, 3)]);
        let b = from_int_terms(&[(-1, 5), (1, 5)]);
        assert!(a.is_palindromic() && b.is_palindromic());
        assert!(a.mul(&b).is_palindromic());
    }

    #[test]
    fn y_terms_requires_even_parity() {
        let even = from_int_terms(&[(-2, 1), (0, 2), (2, 1)]);
        assert_eq!(
            even.y_terms().unwrap(),
            vec![
                (-1, GaussianRational::from_int(1)),
                (0, GaussianRational::from_int(2)),
                (1, GaussianRational::from_int(1)),
            ]
        );
        assert_eq!(theta_prefactor().y_terms(), Err(SeriesError::HalfIntegerPower));
    }

    #[test]
    fn canonical_json() {
        let p = from_int_terms(&[(2, 1), (-2, 1), (0, 2)]);
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(
            json,
            r#"{"coeffs":[{"s_exp":-2,"re":"1/1","im":"0/1"},{"s_exp":0,"re":"2/1","im":"0/1"},{"s_exp":2,"re":"1/1","im":"0/1"}]}"#
        );
    }
}
