//! Truncated Laurent series in q with [`HalfLaurent`] coefficients.
//!
//! Truncation is explicit state: a series knows its coefficients for
//! q-exponents `valuation <= e < trunc` and nothing beyond. Arithmetic
//! propagates the truncation so that a result never claims more precision
//! than its inputs support; mixing truncations takes the minimum.

use std::ops::{Add, Mul, Neg, Sub};

use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::error::{SeriesError, SeriesResult};
use crate::half_laurent::{HalfLaurent, TermList};
use crate::rational::GaussianRational;

/// A truncated Laurent series in q over the ring of [`HalfLaurent`]s.
///
/// `coeffs[i]` is the coefficient of `q^{valuation + i}`. All stored indices
/// are below `trunc`. The zero series is stored with no coefficients and
/// `valuation == trunc`; its equality ignores where the valuation sits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QLaurentSeries {
    valuation: i64,
    coeffs: Vec<HalfLaurent>,
    trunc: i64,
}

impl QLaurentSeries {
    /// Build from raw parts and normalize. Panics if a stored index reaches
    /// `trunc`.
    pub fn new(valuation: i64, coeffs: Vec<HalfLaurent>, trunc: i64) -> Self {
        assert!(
            valuation + coeffs.len() as i64 <= trunc,
            "stored coefficients must stay below the truncation order"
        );
        let mut s = Self { valuation, coeffs, trunc };
        s.normalize();
        s
    }

    pub fn zero(trunc: i64) -> Self {
        Self { valuation: trunc, coeffs: Vec::new(), trunc }
    }

    pub fn one(trunc: i64) -> Self {
        Self::monomial(0, HalfLaurent::one(), trunc)
    }

    /// The single known term `c * q^exp` (plus unknown tail from `trunc` on).
    pub fn monomial(exp: i64, c: HalfLaurent, trunc: i64) -> Self {
        Self::new(exp, vec![c], trunc)
    }

    /// Scalar series from integer terms, used heavily by product formulas:
    /// each `(exp, n)` contributes `n * q^exp`.
    pub fn from_int_terms(terms: &[(i64, i64)], trunc: i64) -> Self {
        let val = terms.iter().map(|&(e, _)| e).min().unwrap_or(trunc);
        let mut coeffs = vec![HalfLaurent::zero(); (trunc - val).max(0) as usize];
        for &(e, n) in terms {
            assert!(e < trunc);
            coeffs[(e - val) as usize] =
                coeffs[(e - val) as usize].add(&HalfLaurent::constant(GaussianRational::from_int(n)));
        }
        Self::new(val, coeffs, trunc)
    }

    fn normalize(&mut self) {
        while self.coeffs.first().is_some_and(HalfLaurent::is_zero) {
            self.coeffs.remove(0);
            self.valuation += 1;
        }
        while self.coeffs.last().is_some_and(HalfLaurent::is_zero) {
            self.coeffs.pop();
        }
        if self.coeffs.is_empty() {
            self.valuation = self.trunc;
        }
    }

    /// Lowest stored q-exponent. For the zero series this equals `trunc`.
    pub fn valuation(&self) -> i64 {
        self.valuation
    }

    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Stored coefficients with their q-exponents, ascending.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &HalfLaurent)> {
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(i, c)| (self.valuation + i as i64, c))
            .filter(|(_, c)| !c.is_zero())
    }

    /// Coefficient of `q^e`. Zero below the valuation or in gaps; an error at
    /// or beyond the truncation, where the series is unknown.
    pub fn coefficient(&self, e: i64) -> SeriesResult<HalfLaurent> {
        if e >= self.trunc {
            return Err(SeriesError::PrecisionExceeded { requested: e, trunc: self.trunc });
        }
        let idx = e - self.valuation;
        if idx < 0 || idx >= self.coeffs.len() as i64 {
            Ok(HalfLaurent::zero())
        } else {
            Ok(self.coeffs[idx as usize].clone())
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let trunc = self.trunc.min(other.trunc);
        let val = self.valuation.min(other.valuation).min(trunc);
        let len = (trunc - val) as usize;
        let mut coeffs = vec![HalfLaurent::zero(); len];
        for (e, c) in self.terms().chain(other.terms()) {
            if e < trunc {
                let idx = (e - val) as usize;
                coeffs[idx] = coeffs[idx].add(c);
            }
        }
        Self::new(val, coeffs, trunc)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.negated())
    }

    pub fn negated(&self) -> Self {
        Self {
            valuation: self.valuation,
            coeffs: self.coeffs.iter().map(HalfLaurent::negated).collect(),
            trunc: self.trunc,
        }
    }

    /// Exact convolution product. The result is known for
    /// `e < min(trunc_a + val_b, trunc_b + val_a)`.
    pub fn mul(&self, other: &Self) -> Self {
        let trunc = (self.trunc + other.valuation).min(other.trunc + self.valuation);
        let val = self.valuation + other.valuation;
        if val >= trunc {
            return Self::zero(trunc);
        }
        let mut coeffs = vec![HalfLaurent::zero(); (trunc - val) as usize];
        for (ea, ca) in self.terms() {
            for (eb, cb) in other.terms() {
                let e = ea + eb;
                if e >= trunc {
                    continue;
                }
                let idx = (e - val) as usize;
                coeffs[idx] = coeffs[idx].add(&ca.mul(cb));
            }
        }
        Self::new(val, coeffs, trunc)
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self::new(
            self.valuation,
            self.coeffs.iter().map(|t| t.scale(c)).collect(),
            self.trunc,
        )
    }

    /// Multiply by `q^k` (exactly known in all exponents, so the truncation
    /// shifts with it).
    pub fn shift(&self, k: i64) -> Self {
        Self {
            valuation: self.valuation + k,
            coeffs: self.coeffs.clone(),
            trunc: self.trunc + k,
        }
    }

    /// Forget coefficients at exponents >= `t`. Panics if this would claim
    /// more precision than the series has.
    pub fn truncated(&self, t: i64) -> Self {
        assert!(t <= self.trunc, "cannot extend a truncation");
        let keep = ((t - self.valuation).max(0) as usize).min(self.coeffs.len());
        Self::new(self.valuation.min(t), self.coeffs[..keep].to_vec(), t)
    }

    /// Multiplicative inverse by back-substitution. The leading coefficient
    /// must be an invertible monomial c*s^j; the result is known for
    /// `e < trunc - 2*valuation`.
    pub fn inv(&self) -> SeriesResult<Self> {
        let lead = match self.coeffs.first() {
            Some(l) => l,
            None => return Err(SeriesError::NonUnitLeadingCoefficient),
        };
        if lead.num_terms() != 1 {
            return Err(SeriesError::NonUnitLeadingCoefficient);
        }
        let (j, c) = lead.terms().next().map(|(e, c)| (e, c.clone())).unwrap();
        let lead_inv = HalfLaurent::monomial(-j, c.inverse().expect("nonzero by construction"));

        let v = self.valuation;
        let count = (self.trunc - v) as usize;
        let mut inv_coeffs: Vec<HalfLaurent> = Vec::with_capacity(count);
        for m in 0..count {
            if m == 0 {
                inv_coeffs.push(lead_inv.clone());
                continue;
            }
            let mut acc = HalfLaurent::zero();
            for r in 1..=m {
                if r < self.coeffs.len() && !self.coeffs[r].is_zero() {
                    acc = acc.add(&self.coeffs[r].mul(&inv_coeffs[m - r]));
                }
            }
            inv_coeffs.push(lead_inv.mul(&acc).negated());
        }
        Ok(Self::new(-v, inv_coeffs, self.trunc - 2 * v))
    }

    /// Nonnegative power by repeated squaring; truncation propagates through
    /// the underlying products.
    pub fn pow(&self, k: u64) -> Self {
        if k == 0 {
            return Self::one((self.trunc - self.valuation).max(1));
        }
        let mut base = self.clone();
        let mut k = k;
        let mut acc: Option<Self> = None;
        while k > 0 {
            if k & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul(&base),
                });
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc.unwrap()
    }

    /// Agreement on the shared known prefix: coefficients equal for all
    /// exponents below `min(trunc, other.trunc)`.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let t = self.trunc.min(other.trunc);
        let lo = self.valuation.min(other.valuation).min(t);
        (lo..t).all(|e| {
            self.coefficient(e).expect("below trunc") == other.coefficient(e).expect("below trunc")
        })
    }

    /// Equal to 1 on the known prefix.
    pub fn is_one_up_to_trunc(&self) -> bool {
        self.agrees_with(&Self::one(self.trunc))
    }
}

impl Add for &QLaurentSeries {
    type Output = QLaurentSeries;
    fn add(self, rhs: &QLaurentSeries) -> QLaurentSeries {
        QLaurentSeries::add(self, rhs)
    }
}

impl Sub for &QLaurentSeries {
    type Output = QLaurentSeries;
    fn sub(self, rhs: &QLaurentSeries) -> QLaurentSeries {
        QLaurentSeries::sub(self, rhs)
    }
}

impl Mul for &QLaurentSeries {
    type Output = QLaurentSeries;
    fn mul(self, rhs: &QLaurentSeries) -> QLaurentSeries {
        QLaurentSeries::mul(self, rhs)
    }
}

impl Neg for &QLaurentSeries {
    type Output = QLaurentSeries;
    fn neg(self) -> QLaurentSeries {
        self.negated()
    }
}

/// Canonical JSON: `{"valuation": v, "trunc": t, "coeffs": [{"q_exp": e,
/// "terms": [{"s_exp": k, "re": "p/q", "im": "p/q"}, ...]}, ...]}` with both
/// exponent axes ascending and only nonzero coefficients listed.
impl Serialize for QLaurentSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        struct Entry<'a>(i64, &'a HalfLaurent);
        impl Serialize for Entry<'_> {
            fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                let mut s = serializer.serialize_struct("Coefficient", 2)?;
                s.serialize_field("q_exp", &self.0)?;
                s.serialize_field("terms", &TermList(self.1))?;
                s.end()
            }
        }
        struct Entries<'a>(&'a QLaurentSeries);
        impl Serialize for Entries<'_> {
            fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                let mut seq = serializer.serialize_seq(None)?;
                for (e, c) in self.0.terms() {
                    seq.serialize_element(&Entry(e, c))?;
                }
                seq.end()
            }
        }
        let mut s = serializer.serialize_struct("QLaurentSeries", 3)?;
        s.serialize_field("valuation", &self.valuation)?;
        s.serialize_field("trunc", &self.trunc)?;
        s.serialize_field("coeffs", &Entries(self))?;
        s.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomials_cancel() {
        let a = QLaurentSeries::monomial(-1, HalfLaurent::one(), 5);
        let b = QLaurentSeries::monomial(1, HalfLaurent::one(), 5);
        let prod = a.mul(&b);
        assert!(prod.is_one_up_to_trunc());
        assert_eq!(prod.valuation(), 0);
    }

    #[test]
    fn geometric_series_inverse() {
        // (1 - q)^{-1} * (1 - q) = 1 + O(q^5); the geometric series is the
        // independent expected value.
        let one_minus_q = QLaurentSeries::from_int_terms(&[(0, 1), (1, -1)], 5);
        let inv = one_minus_q.inv().unwrap();
        let geometric = QLaurentSeries::from_int_terms(&[(0, 1), (1, 1), (2, 1), (3, 1), (4, 1)], 5);
        assert_eq!(inv, geometric);
        assert!(one_minus_q.mul(&inv).is_one_up_to_trunc());
    }

    #[test]
    fn inverse_rejects_non_unit_lead() {
        // leading coefficient y + 1 is not a monomial
        let lead = HalfLaurent::from_terms([
            (0, GaussianRational::one()),
            (2, GaussianRational::one()),
        ]);
        let s = QLaurentSeries::monomial(0, lead, 4);
        assert_eq!(s.inv().unwrap_err(), SeriesError::NonUnitLeadingCoefficient);
        assert_eq!(
            QLaurentSeries::zero(4).inv().unwrap_err(),
            SeriesError::NonUnitLeadingCoefficient
        );
    }

    #[test]
    fn inverse_of_monomial_lead_with_s_power() {
        // (s*q) is invertible: inverse is s^{-1} q^{-1}
        let s = QLaurentSeries::monomial(1, HalfLaurent::monomial(1, GaussianRational::one()), 6);
        let inv = s.inv().unwrap();
        assert_eq!(inv.valuation(), -1);
        assert!(s.mul(&inv).is_one_up_to_trunc());
    }

    #[test]
    fn truncation_takes_minimum() {
        let a = QLaurentSeries::from_int_terms(&[(0, 1), (1, 2)], 9);
        let b = QLaurentSeries::from_int_terms(&[(0, 3)], 4);
        assert_eq!(a.mul(&b).trunc(), 4);
        assert_eq!(a.add(&b).trunc(), 4);
        assert_eq!(a.mul(&b.shift(2)).trunc(), 6);
    }

    #[test]
    fn coefficient_beyond_truncation_errors() {
        let a = QLaurentSeries::from_int_terms(&[(0, 1)], 3);
        assert_eq!(a.coefficient(2).unwrap(), HalfLaurent::zero());
        assert_eq!(
            a.coefficient(3).unwrap_err(),
            SeriesError::PrecisionExceeded { requested: 3, trunc: 3 }
        );
        assert_eq!(a.coefficient(-7).unwrap(), HalfLaurent::zero());
    }

    #[test]
    fn zero_series_equality_ignores_valuation() {
        let z1 = QLaurentSeries::new(-3, vec![HalfLaurent::zero(), HalfLaurent::zero()], 5);
        let z2 = QLaurentSeries::zero(5);
        assert_eq!(z1, z2);
        assert!(z1.is_zero());
    }

    #[test]
    fn pow_small_cases() {
        let a = QLaurentSeries::from_int_terms(&[(0, 1), (1, 1)], 6);
        assert!(a.pow(0).is_one_up_to_trunc());
        assert_eq!(a.pow(1), a);
        // (1+q)^2 = 1 + 2q + q^2
        assert_eq!(a.pow(2), QLaurentSeries::from_int_terms(&[(0, 1), (1, 2), (2, 1)], 6));
    }
}
