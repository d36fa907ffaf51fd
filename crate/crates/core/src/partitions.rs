//! Partition combinatorics for the two sides of the correspondence:
//! plain partitions with their age grading, partitions weighted by a graded
//! cohomology basis of the surface, and the diagonal change of basis L
//! between lambda- and theta-labelled Fock vectors.
//!
//! The surface cohomology is modeled as a graded label set only (default
//! 24 = 1 + 22 + 1); no cup products. The basis size is a parameter so tests
//! can run tiny cases.

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{SeriesError, SeriesResult};
use crate::forms::{discriminant_series, FormOrder};
use crate::rational::GaussianRational;

/// A partition of n: parts sorted non-increasing.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Builds from any order; zero parts are rejected.
    pub fn new(mut parts: Vec<u32>) -> Self {
        assert!(parts.iter().all(|&p| p > 0), "parts must be positive");
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn n(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The age grading of the twisted sector: n minus the number of parts.
    pub fn age(&self) -> u32 {
        self.n() - self.parts.len() as u32
    }
}

/// A graded basis label for the surface cohomology: the unit (degree 0), a
/// divisor class (degree 2), or the point class (degree 4).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasisClass {
    Unit,
    Divisor(u32),
    Point,
}

impl BasisClass {
    /// The section class B of the elliptic fibration, by convention D_1.
    pub const SECTION: BasisClass = BasisClass::Divisor(1);
    /// The fiber class F, by convention D_2.
    pub const FIBER: BasisClass = BasisClass::Divisor(2);
    /// The Poincare dual of a point.
    pub const POINT_DUAL: BasisClass = BasisClass::Point;

    pub fn degree(self) -> u32 {
        match self {
            BasisClass::Unit => 0,
            BasisClass::Divisor(_) => 2,
            BasisClass::Point => 4,
        }
    }

    pub fn label(self) -> String {
        match self {
            BasisClass::Unit => "unit".to_string(),
            BasisClass::Divisor(k) => format!("D_{}", k),
            BasisClass::Point => "point".to_string(),
        }
    }
}

impl fmt::Display for BasisClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// The graded labels for a basis of the given total dimension: the unit,
/// `basis_size - 2` divisor classes, and the point class.
pub fn basis_labels(basis_size: u32) -> Vec<BasisClass> {
    assert!(basis_size >= 1, "basis must have at least one class");
    let mut labels = vec![BasisClass::Unit];
    if basis_size >= 2 {
        labels.extend((1..basis_size - 1).map(BasisClass::Divisor));
        labels.push(BasisClass::Point);
    }
    labels
}

/// A partition with each part labelled by a basis class. Pairs are kept in
/// canonical order (part descending, then label ascending) so equality is
/// multiset equality.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeightedPartition {
    pairs: Vec<(u32, BasisClass)>,
}

impl WeightedPartition {
    pub fn new(mut pairs: Vec<(u32, BasisClass)>) -> Self {
        assert!(pairs.iter().all(|&(p, _)| p > 0), "parts must be positive");
        pairs.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        Self { pairs }
    }

    pub fn pairs(&self) -> &[(u32, BasisClass)] {
        &self.pairs
    }

    pub fn n(&self) -> u32 {
        self.pairs.iter().map(|&(p, _)| p).sum()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn partition(&self) -> Partition {
        Partition::new(self.pairs.iter().map(|&(p, _)| p).collect())
    }

    pub fn age(&self) -> u32 {
        self.n() - self.pairs.len() as u32
    }

    /// Total cohomological degree of the labels.
    pub fn weight_degree(&self) -> u32 {
        self.pairs.iter().map(|&(_, c)| c.degree()).sum()
    }
}

impl fmt::Display for WeightedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, (p, c)) in self.pairs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({},{})", p, c)?;
        }
        write!(f, ")")
    }
}

impl Serialize for WeightedPartition {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<(u32, String)> =
            self.pairs.iter().map(|&(p, c)| (p, c.label())).collect();
        let mut s = serializer.serialize_struct("WeightedPartition", 2)?;
        s.serialize_field("pairs", &pairs)?;
        s.serialize_field("age", &self.age())?;
        s.end()
    }
}

/// Visits every weighted partition of `n` exactly once, in canonical order
/// (pairs ordered part-descending then label-ascending, sequences emitted
/// lexicographically in that order). Each visit receives the canonical pair
/// slice.
fn visit_weighted<F: FnMut(&[(u32, BasisClass)])>(n: u32, basis_size: u32, mut f: F) {
    let labels = basis_labels(basis_size);
    let mut current: Vec<(u32, BasisClass)> = Vec::new();
    // (max_part, min_label_for_max_part) bounds keep the sequence canonical.
    fn rec<F: FnMut(&[(u32, BasisClass)])>(
        remaining: u32,
        max_part: u32,
        min_label: usize,
        labels: &[BasisClass],
        current: &mut Vec<(u32, BasisClass)>,
        f: &mut F,
    ) {
        if remaining == 0 {
            f(current);
            return;
        }
        let mut part = remaining.min(max_part);
        while part >= 1 {
            let start = if part == max_part { min_label } else { 0 };
            for li in start..labels.len() {
                current.push((part, labels[li]));
                rec(remaining - part, part, li, labels, current, f);
                current.pop();
            }
            part -= 1;
        }
    }
    rec(n, n.max(1), 0, &labels, &mut current, &mut f);
}

/// All weighted partitions of `n` over a basis of the given size, each
/// exactly once, in canonical order.
pub fn enumerate_weighted(n: u32, basis_size: u32) -> Vec<WeightedPartition> {
    let mut out = Vec::new();
    visit_weighted(n, basis_size, |pairs| {
        out.push(WeightedPartition { pairs: pairs.to_vec() })
    });
    out
}

/// Number of weighted partitions of `n`, by the same enumeration as
/// [`enumerate_weighted`] but without materializing.
pub fn count_weighted(n: u32, basis_size: u32) -> u64 {
    let mut count = 0u64;
    visit_weighted(n, basis_size, |_| count += 1);
    count
}

/// Which labelled basis a Fock vector is expressed in.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum BasisKind {
    Lambda,
    Theta,
}

/// A formal Q(i)-linear combination of weighted-partition labels, all in one
/// basis. The theta labels denote the Nakajima-normalized classes, so the
/// change of basis L is diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FockVector {
    basis: BasisKind,
    terms: BTreeMap<WeightedPartition, GaussianRational>,
}

impl FockVector {
    pub fn zero(basis: BasisKind) -> Self {
        Self { basis, terms: BTreeMap::new() }
    }

    /// The unit lambda-basis vector on one label.
    pub fn lambda(wp: WeightedPartition) -> Self {
        Self::unit(BasisKind::Lambda, wp)
    }

    /// The unit theta-basis vector on one label.
    pub fn theta(wp: WeightedPartition) -> Self {
        Self::unit(BasisKind::Theta, wp)
    }

    fn unit(basis: BasisKind, wp: WeightedPartition) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(wp, GaussianRational::one());
        Self { basis, terms }
    }

    pub fn basis(&self) -> BasisKind {
        self.basis
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WeightedPartition, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of one label (zero when absent).
    pub fn coefficient(&self, wp: &WeightedPartition) -> GaussianRational {
        self.terms.get(wp).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.basis);
        }
        Self {
            basis: self.basis,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> SeriesResult<Self> {
        if self.basis != other.basis {
            return Err(SeriesError::MixedBasis);
        }
        let mut terms = self.terms.clone();
        for (k, v) in &other.terms {
            let entry = terms.entry(k.clone()).or_insert_with(GaussianRational::zero);
            *entry += v;
            if entry.is_zero() {
                terms.remove(k);
            }
        }
        Ok(Self { basis: self.basis, terms })
    }

    fn map_diagonal(
        &self,
        expect: BasisKind,
        target: BasisKind,
        scalar: impl Fn(u32) -> GaussianRational,
    ) -> SeriesResult<Self> {
        if self.basis != expect {
            return Err(SeriesError::MixedBasis);
        }
        Ok(Self {
            basis: target,
            terms: self
                .terms
                .iter()
                .map(|(wp, c)| {
                    let s = scalar(wp.age());
                    (wp.clone(), c * &s)
                })
                .collect(),
        })
    }
}

/// The additive isomorphism L: each lambda label of age a maps to (-i)^a
/// times the matching theta label. Linear over Q(i); rejects theta-basis
/// input with `MixedBasis`.
pub fn l_apply(v: &FockVector) -> SeriesResult<FockVector> {
    v.map_diagonal(BasisKind::Lambda, BasisKind::Theta, |age| {
        GaussianRational::neg_i_pow(age as i64)
    })
}

/// Inverse of [`l_apply`]: theta labels scale by (-i)^{-age} back to lambda.
pub fn l_inverse_apply(v: &FockVector) -> SeriesResult<FockVector> {
    v.map_diagonal(BasisKind::Theta, BasisKind::Lambda, |age| {
        GaussianRational::neg_i_pow(-(age as i64))
    })
}

/// Enumeration counts against the series side: coefficients of
/// `prod_{m>=1} (1 - q^m)^{-24}` computed by series inversion. Returns the
/// per-n pairs (enumerated, series coefficient) for n = 0..=n_max.
pub fn gottsche_counts(n_max: u32) -> (Vec<u64>, Vec<GaussianRational>) {
    let counts: Vec<u64> = (0..=n_max).map(|n| count_weighted(n, 24)).collect();
    // Delta / q is exactly prod (1 - q^m)^24; invert it.
    let t = n_max as i64 + 2;
    let product = discriminant_series(FormOrder::new(t)).shift(-1);
    let inverse = product.inv().expect("lead is 1");
    let series: Vec<GaussianRational> = (0..=n_max as i64)
        .map(|e| inverse.coefficient(e).expect("within trunc").coefficient(0))
        .collect();
    (counts, series)
}

/// True iff the enumeration count matches the series coefficient for every
/// n <= n_max.
pub fn gottsche_check(n_max: u32) -> bool {
    let (counts, series) = gottsche_counts(n_max);
    counts
        .iter()
        .zip(&series)
        .all(|(&c, s)| &GaussianRational::from_int(c as i64) == s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn age_of_named_shapes() {
        assert_eq!(Partition::new(vec![1; 7]).age(), 0);
        assert_eq!(Partition::new(vec![7]).age(), 6);
        assert_eq!(Partition::new(vec![2, 1]).age(), 1);
        assert_eq!(Partition::new(vec![]).age(), 0);
    }

    #[test]
    fn age_range_and_minimum() {
        for n in 1..=7u32 {
            for wp in enumerate_weighted(n, 1) {
                let age = wp.age();
                assert!(age < n);
                assert_eq!(age == 0, wp.partition().parts() == vec![1; n as usize]);
            }
        }
    }

    #[test]
    fn enumeration_counts_small_bases() {
        // Basis 1 gives plain partition counts.
        let expected_p: [u64; 9] = [1, 1, 2, 3, 5, 7, 11, 15, 22];
        for (n, &e) in expected_p.iter().enumerate() {
            assert_eq!(count_weighted(n as u32, 1), e, "n={}", n);
        }
        // One part, 24 labels.
        assert_eq!(count_weighted(1, 24), 24);
        // Independently: (2) gives 24, (1,1) gives C(25,2) = 300.
        assert_eq!(count_weighted(2, 24), 324);
        assert_eq!(count_weighted(0, 24), 1);
        assert!(enumerate_weighted(0, 24) == vec![WeightedPartition::new(vec![])]);
    }

    #[test]
    fn enumeration_is_canonical_and_duplicate_free() {
        let all = enumerate_weighted(4, 3);
        for wp in &all {
            assert_eq!(wp.n(), 4);
            let canonical = WeightedPartition::new(wp.pairs().to_vec());
            assert_eq!(&canonical, wp);
        }
        let mut dedup = all.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), all.len());
    }

    #[test]
    fn counts_match_product_generating_function() {
        // Coefficients of prod (1-q^m)^{-b} for small b, via series inversion.
        for b in [1u32, 2, 24] {
            let n_max = 8;
            let t = n_max as i64 + 2;
            let mut product = crate::qseries::QLaurentSeries::one(t);
            for m in 1..t {
                let factor = crate::qseries::QLaurentSeries::from_int_terms(&[(0, 1), (m, -1)], t);
                product = product.mul(&factor.pow(b as u64));
            }
            let inv = product.inv().unwrap();
            for n in 0..=n_max {
                let series = inv.coefficient(n as i64).unwrap().coefficient(0);
                let counted = GaussianRational::from_int(count_weighted(n, b) as i64);
                assert_eq!(series, counted, "b={} n={}", b, n);
            }
        }
    }

    #[test]
    fn l_map_scales_by_age() {
        let one = GaussianRational::one();
        let i = GaussianRational::i();

        // age 0: fixed by L
        let nu = WeightedPartition::new(vec![(1, BasisClass::FIBER); 3]);
        let v = l_apply(&FockVector::lambda(nu.clone())).unwrap();
        assert_eq!(v.basis(), BasisKind::Theta);
        assert_eq!(v.coefficient(&nu), one);

        // age 1: scales by -i
        let two_unit = WeightedPartition::new(vec![(2, BasisClass::Unit)]);
        let v = l_apply(&FockVector::lambda(two_unit.clone())).unwrap();
        assert_eq!(v.coefficient(&two_unit), -i.clone());

        // age 2: scales by (-i)^2 = -1
        let three_point = WeightedPartition::new(vec![(3, BasisClass::Point)]);
        let v = l_apply(&FockVector::lambda(three_point.clone())).unwrap();
        assert_eq!(v.coefficient(&three_point), -one.clone());

        // inverse scaling
        let w = l_inverse_apply(&FockVector::theta(two_unit.clone())).unwrap();
        assert_eq!(w.coefficient(&two_unit), i);
    }

    #[test]
    fn l_map_round_trip_and_basis_guard() {
        let wp = WeightedPartition::new(vec![(2, BasisClass::SECTION), (1, BasisClass::Point)]);
        let v = FockVector::lambda(wp).scale(&GaussianRational::from_ratio(3, 7));
        let round = l_inverse_apply(&l_apply(&v).unwrap()).unwrap();
        assert_eq!(round, v);

        assert_eq!(l_apply(&l_apply(&v).unwrap()).unwrap_err(), SeriesError::MixedBasis);
        assert_eq!(l_inverse_apply(&v).unwrap_err(), SeriesError::MixedBasis);
    }

    #[test]
    fn l_map_scalars_have_modulus_one() {
        use num_traits::One;
        for wp in enumerate_weighted(4, 2) {
            let image = l_apply(&FockVector::lambda(wp.clone())).unwrap();
            let c = image.coefficient(&wp);
            let norm = c.re() * c.re() + c.im() * c.im();
            assert!(norm.is_one());
        }
    }

    #[test]
    fn gottsche_small() {
        let (counts, series) = gottsche_counts(3);
        assert_eq!(counts, vec![1, 24, 324, 3200]);
        assert_eq!(
            series,
            counts
                .iter()
                .map(|&c| GaussianRational::from_int(c as i64))
                .collect::<Vec<_>>()
        );
        assert!(gottsche_check(3));
        assert!(gottsche_check(0));
    }
}
