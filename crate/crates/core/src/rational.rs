//! Exact rational helpers shared across the crate.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed rational {0:?}")]
pub struct ParseRationalError(pub String);

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn from_biguint(v: &BigUint) -> Rational {
    Rational::from_integer(BigInt::from(v.clone()))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"3"`, `"-3/2"` or `" 6/4 "` (reduced on the way in).
pub fn parse(s: &str) -> Result<Rational, ParseRationalError> {
    let t = s.trim();
    let err = || ParseRationalError(s.to_string());
    match t.split_once('/') {
        None => t.parse::<BigInt>().map(Rational::from_integer).map_err(|_| err()),
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| err())?;
            let d: BigInt = d.trim().parse().map_err(|_| err())?;
            if d.is_zero() {
                return Err(err());
            }
            Ok(Rational::new(n, d))
        }
    }
}

/// Canonical rendering: `p` or `p/q` with `q > 0` and `gcd(p, q) = 1`.
pub fn render(q: &Rational) -> String {
    // BigRational is always kept reduced with a positive denominator.
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, m| acc * m)
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for j in 0..k {
        acc = acc * (n - j) / (j + 1);
    }
    acc
}

pub fn is_integer(q: &Rational) -> bool {
    q.denom().is_one()
}

/// Least common multiple of the denominators of `values` (1 for an empty input).
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// Scales a vector of rationals to the primitive integer vector on the same ray
/// (same signs, gcd 1). Returns `None` for the zero vector.
pub fn primitive_integer_vector(values: &[Rational]) -> Option<Vec<BigInt>> {
    if values.iter().all(Zero::is_zero) {
        return None;
    }
    let den = common_denominator(values);
    let scaled: Vec<BigInt> = values
        .iter()
        .map(|q| (q * Rational::from_integer(den.clone())).to_integer())
        .collect();
    let g = scaled
        .iter()
        .fold(BigInt::zero(), |acc, v| acc.gcd(&v.abs()));
    Some(scaled.into_iter().map(|v| v / &g).collect())
}

/// Alternating sign `(-1)^i` for any integer `i`.
pub fn sign(i: i64) -> Rational {
    if i.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}
