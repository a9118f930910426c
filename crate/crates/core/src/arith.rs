//! Exact arithmetic: binomial coefficients over the integers and the
//! extended binomial coefficient over the rationals.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Exact rational number used throughout bound evaluation.
pub type Rational = BigRational;

/// Builds the rational `num/den`.
///
/// Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int<T: Into<BigInt>>(v: T) -> Rational {
    Rational::from_integer(v.into())
}

/// Parses `NUM/DEN` or a bare integer.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim().parse::<BigInt>().ok()?, d.trim().parse::<BigInt>().ok()?),
        None => (s.parse::<BigInt>().ok()?, BigInt::one()),
    };
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// Formats a rational as `num/den` in lowest terms, always with a denominator.
pub fn fmt_rational(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// `C(n, r)` as an arbitrary-precision integer; zero when `r > n`.
pub fn binom_int(n: u64, r: u64) -> BigUint {
    if r > n {
        return BigUint::zero();
    }
    let r = r.min(n - r);
    let mut acc = BigUint::one();
    for i in 0..r {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `C(n, r)` in machine integers, for counting code paths.
///
/// Panics on overflow, which does not occur for any instance that fits in memory.
pub fn choose(n: u64, r: u64) -> u128 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r as u128 {
        acc = acc
            .checked_mul(n as u128 - i)
            .expect("binomial coefficient overflows u128")
            / (i + 1);
    }
    acc
}

/// `C(n, r)` for a possibly negative top argument, returning 0 when `n < r`
/// (including every negative `n`). This is the convention used by the edge
/// formulas, whose arguments are sizes that may collapse to zero.
pub fn choose_i(n: i128, r: u64) -> i128 {
    if n < 0 {
        return 0;
    }
    choose(n as u64, r) as i128
}

pub fn factorial(r: u64) -> BigInt {
    (1..=r).fold(BigInt::one(), |acc, i| acc * i)
}

/// Extended binomial coefficient: `x(x-1)...(x-r+1)/r!` for `x >= r-1`,
/// and exactly zero below `r-1`.
pub fn binom_ext(x: &Rational, r: u64) -> Rational {
    assert!(r >= 1, "binom_ext requires r >= 1");
    let threshold = rat_int(r as i64 - 1);
    if *x < threshold {
        return Rational::zero();
    }
    let mut acc = Rational::one();
    let mut term = x.clone();
    for _ in 0..r {
        acc *= &term;
        term -= Rational::one();
    }
    acc / Rational::from_integer(factorial(r))
}

pub fn binom_ext_int(n: u64, r: u64) -> Rational {
    Rational::from_integer(BigInt::from(binom_int(n, r)))
}

/// Integer power of a rational.
pub fn rpow(x: &Rational, e: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..e {
        acc *= x;
    }
    acc
}

/// `floor(x)` for a rational.
pub fn floor(x: &Rational) -> BigInt {
    x.numer().div_floor(x.denom())
}
