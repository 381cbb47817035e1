//! Exact rational scalars.
//!
//! [`Rational`] is `num_rational::BigRational`: always reduced, denominator
//! positive, zero stored as `0/1`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

/// `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `num/den` in lowest terms. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRationalError {
    pub text: String,
    pub reason: &'static str,
}

impl fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cannot parse {:?} as an exact rational: {}", self.text, self.reason)
    }
}

impl std::error::Error for ParseRationalError {}

/// Parses `"p"`, `"-p"`, `"p/q"` (surrounding whitespace allowed). Decimal
/// points and exponents are rejected: inputs must be exact.
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let err = |reason| ParseRationalError { text: text.to_string(), reason };
    let s = text.trim();
    if s.is_empty() {
        return Err(err("empty literal"));
    }
    if s.contains(['.', 'e', 'E']) {
        return Err(err("floating-point literals are not exact"));
    }
    let parse_int = |t: &str| -> Result<BigInt, ParseRationalError> {
        let t = t.trim();
        let digits = t.strip_prefix(['+', '-']).unwrap_or(t);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err("expected an integer or p/q"));
        }
        t.parse::<BigInt>().map_err(|_| err("expected an integer or p/q"))
    };
    match s.split_once('/') {
        None => Ok(Rational::from_integer(parse_int(s)?)),
        Some((p, q)) => {
            let p = parse_int(p)?;
            let q = parse_int(q)?;
            if q.is_zero() {
                return Err(err("zero denominator"));
            }
            Ok(Rational::new(p, q))
        }
    }
}

/// `"p/q"`, or `"p"` for integers.
pub fn to_exact_string(x: &Rational) -> String {
    x.to_string()
}

pub fn is_integer(x: &Rational) -> bool {
    x.denom().is_one()
}

/// lcm of the denominators of `values` (1 for an empty slice).
pub fn denominator_lcm<'a, I>(values: I) -> BigInt
where
    I: IntoIterator<Item = &'a Rational>,
{
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Binomial coefficient C(n, k) for nonnegative `n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub fn is_positive(x: &Rational) -> bool {
    x.is_positive()
}
