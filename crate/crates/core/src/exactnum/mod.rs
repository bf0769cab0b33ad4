//! Exact integer and rational arithmetic.
//!
//! Everything in this module is exact: polynomials carry arbitrary-precision
//! integer coefficients, matrices carry reduced rationals, and every
//! eigenvalue comparison is decided by Sturm sign-variation counts rather
//! than by floating point. No `f64` appears on any decision path.

mod matrix;
mod poly;
mod roots;

pub use matrix::{RationalMatrix, SpectrumClaim};
pub use poly::IntPolynomial;
pub use roots::{
    count_roots_below, real_roots, real_roots_with_multiplicity, RealRoot, SturmSequence,
};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Reduced fraction with a positive denominator.
pub type Rational = BigRational;

/// Whether a comparison against a bound admits equality.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strictness {
    /// Count only values strictly below the bound.
    Strict,
    /// Count values below or equal to the bound.
    Inclusive,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ExactError {
    #[error("undefined root count: the zero polynomial has no finite root set")]
    UndefinedRootCount,
    #[error("non-real spectrum: {real} real eigenvalues (with multiplicity) for degree {degree}")]
    NonRealSpectrum { real: usize, degree: usize },
    #[error("matrix is not symmetric but was claimed symmetric")]
    NotSymmetric,
    #[error("matrix shape error: {0}")]
    Shape(String),
}

/// `n / 1` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `num / den` as a reduced rational. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `a`, `-a`, or `a/b`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().ok()?;
            let b: BigInt = b.trim().parse().ok()?;
            if b.is_zero() {
                None
            } else {
                Some(Rational::new(a, b))
            }
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// Renders `a` for integers and `a/b` otherwise; never a decimal.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Renders a rational as a mixed number, e.g. `32 5/7`.
pub fn format_mixed(q: &Rational) -> String {
    if q.is_integer() {
        return q.numer().to_string();
    }
    let whole = q.trunc();
    if whole.is_zero() {
        return format_rational(q);
    }
    let frac = (q - &whole).abs();
    format!("{} {}", whole.numer(), format_rational(&frac))
}

pub fn floor(q: &Rational) -> BigInt {
    q.numer().div_floor(q.denom())
}

pub fn ceil(q: &Rational) -> BigInt {
    -((-q.numer()).div_floor(q.denom()))
}

/// Least common multiple of the denominators of `qs` (1 for an empty list).
pub(crate) fn denominator_lcm<'a>(qs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    qs.into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// Lossy conversion for display and for the floating-point test oracle only.
pub fn to_f64(q: &Rational) -> f64 {
    let n = q.numer().to_f64().unwrap_or(f64::NAN);
    let d = q.denom().to_f64().unwrap_or(f64::NAN);
    if n.is_finite() && d.is_finite() {
        n / d
    } else {
        // Huge numerators: shift both down before dividing.
        let shift = q.numer().bits().max(q.denom().bits()).saturating_sub(60);
        let n = (q.numer() >> shift).to_f64().unwrap_or(0.0);
        let d = (q.denom() >> shift).to_f64().unwrap_or(1.0);
        n / d
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_reduces_on_construction() {
        assert_eq!(rat(46, 12), rat(23, 6));
        assert_eq!(rat(3, -6), rat(-1, 2));
        assert!(rat(3, -6).denom() > &BigInt::zero());
    }

    #[test]
    fn formatting_is_exact() {
        assert_eq!(format_rational(&rat(229, 7)), "229/7");
        assert_eq!(format_mixed(&rat(229, 7)), "32 5/7");
        assert_eq!(format_rational(&int(-3)), "-3");
        assert_eq!(format_mixed(&rat(-1, 2)), "-1/2");
    }

    #[test]
    fn parse_round_trip() {
        for s in ["0", "-3", "23/6", "-8/29"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("x").is_none());
    }

    #[test]
    fn floor_and_ceil() {
        assert_eq!(floor(&rat(229, 7)), BigInt::from(32));
        assert_eq!(ceil(&rat(161, 6)), BigInt::from(27));
        assert_eq!(floor(&rat(-1, 2)), BigInt::from(-1));
        assert_eq!(ceil(&rat(-1, 2)), BigInt::from(0));
        assert_eq!(ceil(&int(4)), BigInt::from(4));
    }
}
