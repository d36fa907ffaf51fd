//! q-expansions of the modular discriminant, the two-variable Jacobi theta
//! function, and the kernel F^{2n-2}/Delta that generates the Hilbert-scheme
//! curve counts.
//!
//! Infinite products are truncated at m < q_order: a factor with m >= q_order
//! differs from 1 only at exponents beyond the truncation, so the computed
//! prefix is exact.

use crate::half_laurent::HalfLaurent;
use crate::qseries::QLaurentSeries;
use crate::rational::GaussianRational;

/// Requested q-precision: coefficients are computed for exponents < `q_order`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct FormOrder(i64);

impl FormOrder {
    /// Panics unless `q_order >= 1`.
    pub fn new(q_order: i64) -> Self {
        assert!(q_order >= 1, "q_order must be at least 1");
        Self(q_order)
    }

    pub fn get(self) -> i64 {
        self.0
    }
}

/// The modular discriminant `Delta = q * prod_{m>=1} (1 - q^m)^24`,
/// truncated at `q_order`. Valuation 1, integer scalar coefficients.
pub fn discriminant_series(ord: FormOrder) -> QLaurentSeries {
    let t = ord.get();
    let mut eta = QLaurentSeries::one(t);
    for m in 1..t {
        eta = eta.mul(&QLaurentSeries::from_int_terms(&[(0, 1), (m, -1)], t));
    }
    eta.pow(24).shift(1).truncated(t)
}

/// The Jacobi theta function
/// `F = (y^{1/2} + y^{-1/2}) * prod_{m>=1} (1 + y q^m)(1 + y^{-1} q^m) / (1 - q^m)^2`,
/// truncated at `q_order`. Valuation 0; every coefficient is an odd-parity
/// palindromic Laurent polynomial in s = y^{1/2}.
pub fn theta_series(ord: FormOrder) -> QLaurentSeries {
    let t = ord.get();
    let prefactor = HalfLaurent::from_terms([
        (1, GaussianRational::one()),
        (-1, GaussianRational::one()),
    ]);
    let mut f = QLaurentSeries::monomial(0, prefactor, t);
    for m in 1..t {
        let plus_y = QLaurentSeries::new(
            0,
            {
                let mut c = vec![HalfLaurent::zero(); m as usize + 1];
                c[0] = HalfLaurent::one();
                c[m as usize] = HalfLaurent::y_power(1);
                c
            },
            t,
        );
        let plus_y_inv = QLaurentSeries::new(
            0,
            {
                let mut c = vec![HalfLaurent::zero(); m as usize + 1];
                c[0] = HalfLaurent::one();
                c[m as usize] = HalfLaurent::y_power(-1);
                c
            },
            t,
        );
        // 1/(1-q^m)^2 = sum_{j>=0} (j+1) q^{mj}, the closed geometric-square
        // expansion; cheaper than inverting inside the product loop.
        let mut geom = Vec::new();
        let mut j = 0;
        while m * j < t {
            geom.push((m * j, j + 1));
            j += 1;
        }
        let geom = QLaurentSeries::from_int_terms(&geom, t);
        f = f.mul(&plus_y).mul(&plus_y_inv).mul(&geom);
    }
    f
}

/// The kernel `K_n = F^{2n-2} / Delta`, truncated at `q_order`. Valuation -1;
/// every coefficient is an even-parity palindromic Laurent polynomial in y.
pub fn kernel_series(n: u32, ord: FormOrder) -> QLaurentSeries {
    assert!(n >= 1, "n must be at least 1");
    // Work two orders higher: inverting Delta (valuation 1) costs two orders
    // of q-precision.
    let work = FormOrder::new(ord.get() + 2);
    let f_pow = theta_series(work).pow(2 * n as u64 - 2);
    let delta_inv = discriminant_series(work)
        .inv()
        .expect("Delta has an invertible lead");
    f_pow.mul(&delta_inv).truncated(ord.get())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::half_laurent::Parity;

    fn int_coeff(series: &QLaurentSeries, e: i64) -> i64 {
        let c = series.coefficient(e).unwrap();
        let v = c.coefficient(0);
        assert!(v.is_integer(), "expected integer scalar at q^{}", e);
        assert_eq!(c.num_terms(), usize::from(!v.is_zero()));
        let s = v.re().numer().to_string();
        s.parse().unwrap()
    }

    #[test]
    fn discriminant_prefix() {
        let d = discriminant_series(FormOrder::new(6));
        assert_eq!(d.valuation(), 1);
        assert_eq!(d.coefficient(0).unwrap(), HalfLaurent::zero());
        let got: Vec<i64> = (1..6).map(|e| int_coeff(&d, e)).collect();
        assert_eq!(got, vec![1, -24, 252, -1472, 4830]);
    }

    #[test]
    fn discriminant_deeper_prefix_matches_ramanujan_tau() {
        // Frozen from an independent integer-convolution expansion.
        let d = discriminant_series(FormOrder::new(11));
        let got: Vec<i64> = (1..11).map(|e| int_coeff(&d, e)).collect();
        assert_eq!(
            got,
            vec![1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920]
        );
    }

    #[test]
    fn discriminant_is_order_stable() {
        let small = discriminant_series(FormOrder::new(8));
        let large = discriminant_series(FormOrder::new(18));
        assert!(small.agrees_with(&large));
    }

    #[test]
    fn theta_low_coefficients() {
        let f = theta_series(FormOrder::new(4));
        assert_eq!(f.valuation(), 0);
        let one = GaussianRational::one;
        // q^0: s + s^{-1}
        assert_eq!(
            f.coefficient(0).unwrap(),
            HalfLaurent::from_terms([(-1, one()), (1, one())])
        );
        // q^1: (s + s^{-1})^3, from expanding the m=1 factor to first order
        let prefactor = HalfLaurent::from_terms([(-1, one()), (1, one())]);
        assert_eq!(f.coefficient(1).unwrap(), prefactor.pow(3));
        // q^2 and q^3, frozen from an independent expansion
        let int = GaussianRational::from_int;
        assert_eq!(
            f.coefficient(2).unwrap(),
            HalfLaurent::from_terms([(-3, int(3)), (-1, int(9)), (1, int(9)), (3, int(3))])
        );
        assert_eq!(
            f.coefficient(3).unwrap(),
            HalfLaurent::from_terms([
                (-5, int(1)),
                (-3, int(9)),
                (-1, int(22)),
                (1, int(22)),
                (3, int(9)),
                (5, int(1)),
            ])
        );
    }

    #[test]
    fn theta_coefficients_are_odd_palindromic_integral_and_bounded() {
        let ord = 9;
        let f = theta_series(FormOrder::new(ord));
        for e in 0..ord {
            let c = f.coefficient(e).unwrap();
            assert_eq!(c.parity(), Parity::Odd, "q^{}", e);
            assert!(c.is_palindromic(), "q^{}", e);
            assert!(c.is_integral(), "q^{}", e);
            assert!(c.max_exp().unwrap() <= 2 * e + 1, "q^{}", e);
            assert!(c.min_exp().unwrap() >= -(2 * e + 1), "q^{}", e);
        }
    }

    #[test]
    fn kernel_n1_is_inverse_discriminant() {
        let k = kernel_series(1, FormOrder::new(6));
        assert_eq!(k.valuation(), -1);
        let got: Vec<i64> = (-1..6).map(|e| int_coeff(&k, e)).collect();
        assert_eq!(got, vec![1, 24, 324, 3200, 25650, 176256, 1073720]);
    }

    #[test]
    fn kernel_leading_coefficient_is_binomial() {
        for n in 1..=4u32 {
            let k = kernel_series(n, FormOrder::new(2));
            assert_eq!(k.valuation(), -1, "n={}", n);
            let lead = k.coefficient(-1).unwrap();
            let prefactor = HalfLaurent::from_terms([
                (-1, GaussianRational::one()),
                (1, GaussianRational::one()),
            ]);
            assert_eq!(lead, prefactor.pow(2 * n - 2), "n={}", n);
        }
    }

    #[test]
    fn kernel_n2_frozen_coefficients() {
        let int = GaussianRational::from_int;
        let k = kernel_series(2, FormOrder::new(3));
        assert_eq!(
            k.coefficient(-1).unwrap(),
            HalfLaurent::from_terms([(-2, int(1)), (0, int(2)), (2, int(1))])
        );
        assert_eq!(
            k.coefficient(0).unwrap(),
            HalfLaurent::from_terms([
                (-4, int(2)),
                (-2, int(32)),
                (0, int(60)),
                (2, int(32)),
                (4, int(2)),
            ])
        );
        assert_eq!(
            k.coefficient(1).unwrap(),
            HalfLaurent::from_terms([
                (-6, int(1)),
                (-4, int(60)),
                (-2, int(555)),
                (0, int(992)),
                (2, int(555)),
                (4, int(60)),
                (6, int(1)),
            ])
        );
    }

    #[test]
    fn kernel_coefficients_are_even_and_palindromic() {
        for n in 1..=3u32 {
            let ord = 6;
            let k = kernel_series(n, FormOrder::new(ord));
            for e in -1..ord {
                let c = k.coefficient(e).unwrap();
                assert!(matches!(c.parity(), Parity::Even | Parity::Zero), "n={} q^{}", n, e);
                assert!(c.is_palindromic(), "n={} q^{}", n, e);
                assert!(c.is_integral(), "n={} q^{}", n, e);
            }
        }
    }
}
