//! Exact scalars, binomial combinatorics and sparse Laurent polynomials.
//!
//! Everything downstream works over [`Rational`], an arbitrary-precision
//! fraction kept in lowest terms.

mod combinat;
mod laurent;

pub use combinat::{
    binom, choose, factorial, factorial_cap, falling, rising, DEFAULT_FACTORIAL_CAP,
};
pub use laurent::LaurentPoly;

use num_bigint::BigInt;

/// Exact rational scalar.
pub type Rational = num_rational::BigRational;

/// Lifts an integer into [`Rational`].
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Builds `num / den` in lowest terms. Panics on a zero denominator.
pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// `(-1)^k`
pub(crate) fn sign(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}
