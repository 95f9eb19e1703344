use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::Rational;
use crate::error::{Error, Result};

pub const DEFAULT_FACTORIAL_CAP: usize = 512;

const CAP_ENV: &str = "HANKELFORGE_FACTORIAL_CAP";

static TABLE: OnceLock<Vec<BigInt>> = OnceLock::new();

/// Largest `n` served from the factorial cache. Read once from
/// `HANKELFORGE_FACTORIAL_CAP`, falling back to [`DEFAULT_FACTORIAL_CAP`].
pub fn factorial_cap() -> usize {
    table().len() - 1
}

fn table() -> &'static [BigInt] {
    TABLE.get_or_init(|| {
        let cap = std::env::var(CAP_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .unwrap_or(DEFAULT_FACTORIAL_CAP);
        let mut t = Vec::with_capacity(cap + 1);
        t.push(BigInt::one());
        for i in 1..=cap {
            let next = &t[i - 1] * BigInt::from(i);
            t.push(next);
        }
        t
    })
}

/// `n!`
pub fn factorial(n: u64) -> BigInt {
    let t = table();
    let cap = t.len() as u64 - 1;
    if n <= cap {
        return t[n as usize].clone();
    }
    let mut acc = t[cap as usize].clone();
    for i in (cap + 1)..=n {
        acc *= BigInt::from(i);
    }
    acc
}

/// Falling factorial `n (n-1) ... (n-k+1)`; empty product for `k = 0`.
pub fn falling(n: i64, k: u64) -> BigInt {
    (0..k as i64).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i))
}

/// Rising factorial `n (n+1) ... (n+k-1)`.
pub fn rising(n: i64, k: u64) -> BigInt {
    (0..k as i64).fold(BigInt::one(), |acc, i| acc * BigInt::from(n + i))
}

/// Integer binomial for nonnegative arguments; zero when `k > n`.
pub fn choose(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// Binomial coefficient `C(n, k)`.
///
/// `k < 0` gives 0 before `n` is looked at, so `C(-1, -1) = 0`. A negative
/// `n` with `k >= 0` is rejected.
pub fn binom(n: i64, k: i64) -> Result<Rational> {
    if k < 0 {
        return Ok(Rational::zero());
    }
    if n < 0 {
        return Err(Error::NegativeUpperIndex { n, k });
    }
    Ok(Rational::from_integer(choose(n as u64, k as u64)))
}
