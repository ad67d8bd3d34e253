//! Exact rational scalars and the small helpers used everywhere else.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational number. Every coefficient in the crate is one of these.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p"` or `"p/q"`.
pub fn parse(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// Canonical text form used in every JSON dump: `"p"` for integers, `"p/q"` otherwise.
pub fn to_string(r: &Rational) -> String {
    r.to_string()
}

/// Least common multiple of the denominators in `row`.
pub fn common_denominator<'a>(row: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    row.into_iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

/// Scales a rational row to a primitive integer row with the same span.
/// The first nonzero entry of the result is positive.
pub fn primitive_integer_row(row: &[Rational]) -> Vec<BigInt> {
    let den = common_denominator(row);
    let mut ints: Vec<BigInt> = row.iter().map(|r| (r * Rational::from_integer(den.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if !g.is_zero() {
        for v in ints.iter_mut() {
            *v /= &g;
        }
    }
    if ints.iter().find(|v| !v.is_zero()).is_some_and(|v| v.is_negative()) {
        for v in ints.iter_mut() {
            *v = -v.clone();
        }
    }
    ints
}
