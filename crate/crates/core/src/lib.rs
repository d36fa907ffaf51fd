//! Exact computation of genus-0 curve-count generating functions for Hilbert
//! schemes of points on a K3 surface, and their transport to the symmetric
//! product through the change of variables -y = exp(iu).
//!
//! The layers, bottom up:
//!
//! - [`rational`]: the coefficient field Q(i), arbitrary precision.
//! - [`half_laurent`]: Laurent polynomials in s = y^{1/2}, the per-q
//!   coefficients.
//! - [`qseries`]: truncated Laurent series in q over those coefficients,
//!   with explicit truncation state.
//! - [`forms`]: the modular discriminant, the Jacobi theta function, and the
//!   kernel F^{2n-2}/Delta.
//! - [`partitions`]: cohomology-weighted partitions, the age grading, and
//!   the diagonal basis change L between lambda and theta labels.
//! - [`invariants`]: two- and three-point curve-count tables and the
//!   verification pipeline, including an independent integer-arithmetic
//!   reference for the n = 1 counts.
//! - [`transform`]: Pade reconstruction, the exact substitution
//!   y = -exp(iu), truncated u-series, and invariant extraction.
//!
//! All arithmetic is exact; there is no floating point anywhere. Every value
//! is immutable after construction and every operation is a pure function,
//! so everything here is safe to share across threads.

pub mod error;
pub mod forms;
pub mod half_laurent;
pub mod invariants;
pub mod partitions;
pub mod qseries;
pub mod rational;
pub mod transform;

pub use error::{SeriesError, SeriesResult};
pub use half_laurent::{HalfLaurent, Parity};
pub use qseries::QLaurentSeries;
pub use rational::GaussianRational;
