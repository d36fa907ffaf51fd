//! The change of variables -y = exp(iu): rational reconstruction of y-series,
//! exact exponential substitution, truncated u-series arithmetic, and the
//! extraction of symmetric-product invariants from u-expansions.
//!
//! Everything is exact over Q(i); the coefficients of exp(iku) are
//! (ik)^j / j! as Gaussian rationals, so identities are checked as equalities,
//! never to a tolerance.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::error::{SeriesError, SeriesResult};
use crate::half_laurent::{HalfLaurent, Parity};
use crate::rational::GaussianRational;

// ---------------------------------------------------------------------------
// Truncated scalar Laurent series in u
// ---------------------------------------------------------------------------

/// A truncated Laurent series in u over Q(i), with the same truncation
/// discipline as the q-series ring: coefficients are known for
/// `valuation <= e < trunc` and nothing beyond.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct USeries {
    valuation: i64,
    coeffs: Vec<GaussianRational>,
    trunc: i64,
}

impl USeries {
    pub fn new(valuation: i64, coeffs: Vec<GaussianRational>, trunc: i64) -> Self {
        assert!(valuation + coeffs.len() as i64 <= trunc);
        let mut s = Self { valuation, coeffs, trunc };
        s.normalize();
        s
    }

    pub fn zero(trunc: i64) -> Self {
        Self { valuation: trunc, coeffs: Vec::new(), trunc }
    }

    pub fn monomial(exp: i64, c: GaussianRational, trunc: i64) -> Self {
        Self::new(exp, vec![c], trunc)
    }

    fn normalize(&mut self) {
        while self.coeffs.first().is_some_and(GaussianRational::is_zero) {
            self.coeffs.remove(0);
            self.valuation += 1;
        }
        while self.coeffs.last().is_some_and(GaussianRational::is_zero) {
            self.coeffs.pop();
        }
        if self.coeffs.is_empty() {
            self.valuation = self.trunc;
        }
    }

    /// Lowest stored u-exponent; equals `trunc` for the zero series.
    pub fn valuation(&self) -> i64 {
        self.valuation
    }

    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, e: i64) -> SeriesResult<GaussianRational> {
        if e >= self.trunc {
            return Err(SeriesError::PrecisionExceeded { requested: e, trunc: self.trunc });
        }
        let idx = e - self.valuation;
        if idx < 0 || idx >= self.coeffs.len() as i64 {
            Ok(GaussianRational::zero())
        } else {
            Ok(self.coeffs[idx as usize].clone())
        }
    }

    /// Nonzero stored terms, ascending.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &GaussianRational)> {
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(i, c)| (self.valuation + i as i64, c))
            .filter(|(_, c)| !c.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        let trunc = self.trunc.min(other.trunc);
        let val = self.valuation.min(other.valuation).min(trunc);
        let mut coeffs = vec![GaussianRational::zero(); (trunc - val) as usize];
        for (e, c) in self.terms().chain(other.terms()) {
            if e < trunc {
                coeffs[(e - val) as usize] += c;
            }
        }
        Self::new(val, coeffs, trunc)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let trunc = (self.trunc + other.valuation).min(other.trunc + self.valuation);
        let val = self.valuation + other.valuation;
        if val >= trunc {
            return Self::zero(trunc);
        }
        let mut coeffs = vec![GaussianRational::zero(); (trunc - val) as usize];
        for (ea, ca) in self.terms() {
            for (eb, cb) in other.terms() {
                let e = ea + eb;
                if e < trunc {
                    coeffs[(e - val) as usize] += &(ca * cb);
                }
            }
        }
        Self::new(val, coeffs, trunc)
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self::new(
            self.valuation,
            self.coeffs.iter().map(|t| t * c).collect(),
            self.trunc,
        )
    }

    /// Inverse by back-substitution; the result is known for
    /// `e < trunc - 2*valuation`.
    pub fn inv(&self) -> SeriesResult<Self> {
        let lead = match self.coeffs.first() {
            Some(l) => l.clone(),
            None => return Err(SeriesError::NonUnitLeadingCoefficient),
        };
        let lead_inv = lead.inverse().expect("nonzero by normalization");
        let v = self.valuation;
        let count = (self.trunc - v) as usize;
        let mut inv_coeffs: Vec<GaussianRational> = Vec::with_capacity(count);
        for m in 0..count {
            if m == 0 {
                inv_coeffs.push(lead_inv.clone());
                continue;
            }
            let mut acc = GaussianRational::zero();
            for r in 1..=m {
                if r < self.coeffs.len() && !self.coeffs[r].is_zero() {
                    acc += &(&self.coeffs[r] * &inv_coeffs[m - r]);
                }
            }
            inv_coeffs.push(-(&lead_inv * &acc));
        }
        Ok(Self::new(-v, inv_coeffs, self.trunc - 2 * v))
    }

    pub fn agrees_with(&self, other: &Self) -> bool {
        let t = self.trunc.min(other.trunc);
        let lo = self.valuation.min(other.valuation).min(t);
        (lo..t).all(|e| self.coefficient(e).unwrap() == other.coefficient(e).unwrap())
    }

    /// All stored coefficients real and all stored exponents even.
    pub fn is_real_even(&self) -> bool {
        self.terms().all(|(e, c)| e % 2 == 0 && c.is_real())
    }
}

/// Canonical JSON: `{"valuation": v, "trunc": t, "coeffs": [{"u_exp": e,
/// "re": "p/q", "im": "p/q"}, ...]}` with exponents ascending.
impl Serialize for USeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        struct Entry<'a>(i64, &'a GaussianRational);
        impl Serialize for Entry<'_> {
            fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                let mut s = serializer.serialize_struct("Coefficient", 3)?;
                s.serialize_field("u_exp", &self.0)?;
                s.serialize_field("re", &self.1.re_string())?;
                s.serialize_field("im", &self.1.im_string())?;
                s.end()
            }
        }
        struct Entries<'a>(&'a USeries);
        impl Serialize for Entries<'_> {
            fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                let mut seq = serializer.serialize_seq(None)?;
                for (e, c) in self.0.terms() {
                    seq.serialize_element(&Entry(e, c))?;
                }
                seq.end()
            }
        }
        let mut s = serializer.serialize_struct("USeries", 3)?;
        s.serialize_field("valuation", &self.valuation)?;
        s.serialize_field("trunc", &self.trunc)?;
        s.serialize_field("coeffs", &Entries(self))?;
        s.end()
    }
}

// ---------------------------------------------------------------------------
// Dense polynomials in y over Q(i) (internal helpers)
// ---------------------------------------------------------------------------

type Poly = Vec<GaussianRational>;

fn poly_trim(v: &mut Poly) {
    while v.last().is_some_and(GaussianRational::is_zero) {
        v.pop();
    }
}

fn poly_mul(a: &[GaussianRational], b: &[GaussianRational]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![GaussianRational::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += &(ai * bj);
        }
    }
    poly_trim(&mut out);
    out
}

/// Long division over the field: returns (quotient, remainder).
fn poly_divmod(a: &[GaussianRational], b: &[GaussianRational]) -> (Poly, Poly) {
    assert!(!b.is_empty(), "division by the zero polynomial");
    let mut rem: Poly = a.to_vec();
    poly_trim(&mut rem);
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let lead_inv = b.last().unwrap().inverse().expect("trimmed lead is nonzero");
    let mut quot = vec![GaussianRational::zero(); rem.len() - b.len() + 1];
    while rem.len() >= b.len() {
        let deg = rem.len() - b.len();
        let factor = rem.last().unwrap() * &lead_inv;
        quot[deg] = factor.clone();
        for (i, bi) in b.iter().enumerate() {
            let sub = bi * &factor;
            rem[deg + i] -= &sub;
        }
        poly_trim(&mut rem);
        if rem.is_empty() {
            break;
        }
    }
    poly_trim(&mut quot);
    (quot, rem)
}

fn poly_exact_div(a: &[GaussianRational], b: &[GaussianRational]) -> Poly {
    let (q, r) = poly_divmod(a, b);
    assert!(r.is_empty(), "division was not exact");
    q
}

/// Monic gcd by the Euclidean algorithm; `[1]` for coprime inputs.
fn poly_gcd(a: &[GaussianRational], b: &[GaussianRational]) -> Poly {
    let mut x: Poly = a.to_vec();
    let mut y: Poly = b.to_vec();
    poly_trim(&mut x);
    poly_trim(&mut y);
    while !y.is_empty() {
        let (_, r) = poly_divmod(&x, &y);
        x = y;
        y = r;
    }
    if x.is_empty() {
        return x;
    }
    let lead_inv = x.last().unwrap().inverse().unwrap();
    for c in &mut x {
        *c *= &lead_inv;
    }
    x
}

/// Splits an even-parity HalfLaurent as y^{shift} * (dense polynomial with
/// nonzero constant term). The zero input gives (0, []).
fn to_dense_y(p: &HalfLaurent) -> SeriesResult<(i64, Poly)> {
    let terms = p.y_terms()?;
    if terms.is_empty() {
        return Ok((0, Vec::new()));
    }
    let shift = terms[0].0;
    let deg = terms.last().unwrap().0 - shift;
    let mut dense = vec![GaussianRational::zero(); deg as usize + 1];
    for (e, c) in terms {
        dense[(e - shift) as usize] = c;
    }
    Ok((shift, dense))
}

fn from_dense_y(shift: i64, dense: &[GaussianRational]) -> HalfLaurent {
    HalfLaurent::from_terms(
        dense
            .iter()
            .enumerate()
            .map(|(i, c)| (2 * (shift + i as i64), c.clone())),
    )
}

// ---------------------------------------------------------------------------
// Rational functions in y
// ---------------------------------------------------------------------------

/// A ratio of two Laurent polynomials in y (even s-parity), kept in canonical
/// form: gcd(num, den) = 1 over Q(i)[y, y^{-1}], the denominator is an honest
/// polynomial with lowest power y^0, and its lowest coefficient is 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    num: HalfLaurent,
    den: HalfLaurent,
}

impl RationalFunction {
    pub fn new(num: HalfLaurent, den: HalfLaurent) -> SeriesResult<Self> {
        if den.is_zero() {
            return Err(SeriesError::ZeroDenominator);
        }
        if !matches!(num.parity(), Parity::Even | Parity::Zero)
            || !matches!(den.parity(), Parity::Even | Parity::Zero)
        {
            return Err(SeriesError::HalfIntegerPower);
        }
        if num.is_zero() {
            return Ok(Self { num: HalfLaurent::zero(), den: HalfLaurent::one() });
        }
        let (vn, mut n_dense) = to_dense_y(&num)?;
        let (vd, mut d_dense) = to_dense_y(&den)?;
        let g = poly_gcd(&n_dense, &d_dense);
        if g.len() > 1 {
            n_dense = poly_exact_div(&n_dense, &g);
            d_dense = poly_exact_div(&d_dense, &g);
        }
        // Make the lowest denominator coefficient 1. Monomials are units in
        // the Laurent ring, so the y-shift moves wholly onto the numerator.
        let scale = d_dense[0].inverse().expect("nonzero constant term after shift");
        let n_dense: Poly = n_dense.iter().map(|c| c * &scale).collect();
        let d_dense: Poly = d_dense.iter().map(|c| c * &scale).collect();
        Ok(Self {
            num: from_dense_y(vn - vd, &n_dense),
            den: from_dense_y(0, &d_dense),
        })
    }

    /// A Laurent polynomial viewed as a rational function with denominator 1.
    pub fn from_polynomial(p: &HalfLaurent) -> SeriesResult<Self> {
        Self::new(p.clone(), HalfLaurent::one())
    }

    pub fn num(&self) -> &HalfLaurent {
        &self.num
    }

    pub fn den(&self) -> &HalfLaurent {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den == HalfLaurent::one()
    }

    /// Taylor coefficients at y = 0. Fails with `PoleAtOrigin` when the
    /// canonical numerator carries negative powers of y.
    pub fn taylor_expansion(&self, len: usize) -> SeriesResult<Vec<GaussianRational>> {
        if self.num.is_zero() {
            return Ok(vec![GaussianRational::zero(); len]);
        }
        let (vn, n_dense) = to_dense_y(&self.num)?;
        if vn < 0 {
            return Err(SeriesError::PoleAtOrigin);
        }
        let (_, d_dense) = to_dense_y(&self.den)?;
        // den(0) = 1 in canonical form, so plain series division works.
        let mut out = vec![GaussianRational::zero(); len];
        for k in 0..len {
            let shift = vn as usize;
            let mut acc = if k >= shift && k - shift < n_dense.len() {
                n_dense[k - shift].clone()
            } else {
                GaussianRational::zero()
            };
            for j in 1..=k.min(d_dense.len() - 1) {
                acc -= &(&d_dense[j] * &out[k - j]);
            }
            out[k] = acc;
        }
        Ok(out)
    }
}

// ---------------------------------------------------------------------------
// Pade reconstruction
// ---------------------------------------------------------------------------

/// One nontrivial kernel vector of the row system, or `None` when the kernel
/// is trivial. Plain Gauss-Jordan over Q(i).
fn kernel_vector(mut rows: Vec<Vec<GaussianRational>>, ncols: usize) -> Option<Vec<GaussianRational>> {
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
    let mut next_row = 0;
    for col in 0..ncols {
        let pivot_row = (next_row..rows.len()).find(|&r| !rows[r][col].is_zero());
        let Some(pr) = pivot_row else { continue };
        rows.swap(next_row, pr);
        let inv = rows[next_row][col].inverse().unwrap();
        for c in rows[next_row].iter_mut() {
            *c *= &inv;
        }
        let pivot = rows[next_row].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != next_row && !row[col].is_zero() {
                let factor = row[col].clone();
                for (cell, p) in row.iter_mut().zip(&pivot).skip(col) {
                    *cell -= &(p * &factor);
                }
            }
        }
        pivots.push((next_row, col));
        next_row += 1;
        if next_row == rows.len() {
            // remaining columns are all free
            break;
        }
    }
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let free_col = (0..ncols).find(|c| !pivot_cols.contains(c))?;
    let mut solution = vec![GaussianRational::zero(); ncols];
    solution[free_col] = GaussianRational::one();
    for &(r, c) in &pivots {
        solution[c] = -rows[r][free_col].clone();
    }
    Some(solution)
}

/// Reconstructs a rational function with deg(num) <= d_num and
/// deg(den) <= d_den from Taylor coefficients at y = 0, by solving the linear
/// system for the denominator exactly over Q(i) and verifying by re-expansion.
/// Panics unless `taylor.len() >= d_num + d_den + 1`; returns `NoSolution`
/// when no rational function within the budget matches every supplied
/// coefficient.
pub fn pade_reconstruct(
    taylor: &[GaussianRational],
    d_num: usize,
    d_den: usize,
) -> SeriesResult<RationalFunction> {
    assert!(
        taylor.len() > d_num + d_den,
        "need at least d_num + d_den + 1 Taylor coefficients"
    );
    let len = taylor.len();
    // fast path: terminating data within the numerator budget is already a
    // polynomial, den = 1, no solve needed
    if taylor.iter().skip(d_num + 1).all(GaussianRational::is_zero) {
        let poly = from_dense_y(0, &taylor[..taylor.len().min(d_num + 1)]);
        return RationalFunction::from_polynomial(&poly);
    }
    // den * taylor must be a polynomial of degree <= d_num: one linear
    // condition per exponent in (d_num, len).
    let rows: Vec<Vec<GaussianRational>> = (d_num + 1..len)
        .map(|e| {
            (0..=d_den)
                .map(|j| {
                    if e >= j {
                        taylor[e - j].clone()
                    } else {
                        GaussianRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    let den = kernel_vector(rows, d_den + 1).ok_or(SeriesError::NoSolution)?;
    // numerator = (taylor * den) truncated at degree d_num
    let mut num = poly_mul(taylor, &den);
    num.truncate(d_num + 1);
    let candidate = RationalFunction::new(from_dense_y(0, &num), from_dense_y(0, &den))?;
    // Re-expansion catches the degenerate solutions of the linear system
    // (e.g. denominators vanishing at the origin).
    match candidate.taylor_expansion(len) {
        Ok(expansion) if expansion == taylor => Ok(candidate),
        Ok(_) => Err(SeriesError::NoSolution),
        Err(SeriesError::PoleAtOrigin) => Err(SeriesError::NoSolution),
        Err(e) => Err(e),
    }
}

/// Default reconstruction budget for a degree-h coefficient of the rank-n
/// kernel: (2n + 2h, 2n + 2h). Series-driven reconstructions with unknown
/// degrees start here and escalate through [`pade_reconstruct_auto`].
pub fn default_degree_budget(n: u32, h: u32) -> (usize, usize) {
    let d = (2 * n + 2 * h) as usize;
    (d, d)
}

/// [`pade_reconstruct`] with an escalating degree budget: starts at
/// `initial`, doubles on `NoSolution`, gives up beyond `cap` or when the
/// budget exceeds the data.
pub fn pade_reconstruct_auto(
    taylor: &[GaussianRational],
    initial: (usize, usize),
    cap: usize,
) -> SeriesResult<RationalFunction> {
    let (mut dn, mut dd) = initial;
    loop {
        if dn + dd + 1 > taylor.len() {
            return Err(SeriesError::NoSolution);
        }
        match pade_reconstruct(taylor, dn, dd) {
            Ok(r) => return Ok(r),
            Err(SeriesError::NoSolution) => {}
            Err(e) => return Err(e),
        }
        if dn.max(dd) >= cap {
            return Err(SeriesError::NoSolution);
        }
        dn = (2 * dn).max(1).min(cap);
        dd = (2 * dd).max(1).min(cap);
    }
}

// ---------------------------------------------------------------------------
// Exponential substitution
// ---------------------------------------------------------------------------

/// Exact u-expansion of a Laurent polynomial in y at y = -exp(iu): each
/// monomial c*y^k contributes c*(-1)^k * sum_j (ik)^j u^j / j!. Requires even
/// s-parity; truncates at `u_order`.
pub fn substitute_exponential(p: &HalfLaurent, u_order: i64) -> SeriesResult<USeries> {
    assert!(u_order >= 1, "u_order must be at least 1");
    let terms = p.y_terms()?;
    let n = u_order as usize;
    // power sums sum_k c_k (-1)^k k^j for each j
    let mut sums = vec![GaussianRational::zero(); n];
    for (k, c) in terms {
        let signed = if k.rem_euclid(2) == 1 { -c } else { c };
        let base = BigInt::from(k);
        let mut kpow = BigInt::from(1);
        for slot in sums.iter_mut() {
            *slot += &(&signed * &GaussianRational::from_bigint(kpow.clone()));
            kpow *= &base;
        }
    }
    // multiply by i^j / j!
    let mut factorial = BigInt::from(1);
    let i_cycle = [
        GaussianRational::one(),
        GaussianRational::i(),
        -GaussianRational::one(),
        -GaussianRational::i(),
    ];
    let mut coeffs = Vec::with_capacity(n);
    for (j, s) in sums.into_iter().enumerate() {
        if j > 0 {
            factorial *= BigInt::from(j);
        }
        let fact_inv = GaussianRational::from_bigint(factorial.clone())
            .inverse()
            .expect("factorial is nonzero");
        coeffs.push(&(&s * &i_cycle[j % 4]) * &fact_inv);
    }
    Ok(USeries::new(0, coeffs, u_order))
}

/// Exact u-expansion of a rational function at y = -exp(iu): substituted
/// numerator over substituted denominator, with a pole at u = 0 reflected in
/// a negative valuation. Fails with `ZeroDenominator` when the substituted
/// denominator vanishes to the working order.
pub fn substitute_rational(r: &RationalFunction, u_order: i64) -> SeriesResult<USeries> {
    let num_u = substitute_exponential(r.num(), u_order)?;
    let den_u = substitute_exponential(r.den(), u_order)?;
    if den_u.is_zero() {
        return Err(SeriesError::ZeroDenominator);
    }
    Ok(num_u.mul(&den_u.inv()?))
}

// ---------------------------------------------------------------------------
// Invariant extraction
// ---------------------------------------------------------------------------

/// Reads a transformed 3-point series as a table of invariants: the value at
/// degree h sits at u-exponent `2h - 2 + total_age - 2n`. Every stored
/// exponent of the wrong parity is a `ParityViolation`; every stored exponent
/// of the right parity contributes one entry, negative h included.
pub fn sym_invariants_from_useries(
    t: &USeries,
    total_age: i64,
    n: u32,
) -> SeriesResult<BTreeMap<i64, GaussianRational>> {
    let mut out = BTreeMap::new();
    for (e, c) in t.terms() {
        if (e - total_age).rem_euclid(2) != 0 {
            return Err(SeriesError::ParityViolation { exponent: e });
        }
        let h = (e - total_age + 2 * n as i64 + 2) / 2;
        out.insert(h, c.clone());
    }
    Ok(out)
}

/// The full per-degree pipeline: the three-point generating polynomial in y
/// at fixed h, pushed through y = -exp(iu). The underlying surface classes
/// are primitive, which keeps the change of variables inside its proven
/// range. The generating data here is a Laurent polynomial, so the
/// denominator-1 fast path applies and the Pade solve is bypassed.
pub fn crc_transform(n: u32, h: u32, u_order: i64) -> SeriesResult<USeries> {
    let p = crate::invariants::hilb_generating_polynomial(n, h);
    let r = RationalFunction::from_polynomial(&p)?;
    substitute_rational(&r, u_order)
}
