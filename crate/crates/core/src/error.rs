//! Error types shared across the library.

use std::fmt;

/// Errors raised by series arithmetic and the transform pipeline.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeriesError {
    /// Series inversion needs the leading coefficient to be an invertible
    /// monomial (a single term c*s^j with c != 0).
    NonUnitLeadingCoefficient,
    /// A coefficient at or beyond the truncation order was requested.
    PrecisionExceeded { requested: i64, trunc: i64 },
    /// A Fock-space operation received a vector in the wrong basis.
    MixedBasis,
    /// No rational function within the degree budget matches the Taylor data.
    NoSolution,
    /// The substitution y = -exp(iu) needs integer powers of y (even s-parity).
    HalfIntegerPower,
    /// The substituted denominator vanishes to the working order.
    ZeroDenominator,
    /// A u-series carries a nonzero coefficient at an exponent of the wrong
    /// parity for the requested extraction.
    ParityViolation { exponent: i64 },
    /// The function has a pole at y = 0, so it has no Taylor expansion there.
    PoleAtOrigin,
}

impl fmt::Display for SeriesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesError::NonUnitLeadingCoefficient => {
                write!(f, "leading coefficient is not an invertible monomial")
            }
            SeriesError::PrecisionExceeded { requested, trunc } => write!(
                f,
                "coefficient of exponent {} requested, but the series is only known below {}",
                requested, trunc
            ),
            SeriesError::MixedBasis => write!(f, "vector is not in the expected basis"),
            SeriesError::NoSolution => {
                write!(f, "no rational function within the degree budget matches")
            }
            SeriesError::HalfIntegerPower => {
                write!(f, "half-integer powers of y are not allowed here")
            }
            SeriesError::ZeroDenominator => {
                write!(f, "denominator vanishes to the working order")
            }
            SeriesError::ParityViolation { exponent } => {
                write!(f, "nonzero coefficient at exponent {} of the wrong parity", exponent)
            }
            SeriesError::PoleAtOrigin => {
                write!(f, "the function has a pole at the origin")
            }
        }
    }
}

impl std::error::Error for SeriesError {}

/// Result alias used throughout the crate.
pub type SeriesResult<T> = Result<T, SeriesError>;
