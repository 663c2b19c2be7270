//! Arbitrary-precision rationals and small integer combinatorics helpers.
//!
//! `Rational` is `num_rational::BigRational`, which already keeps the
//! canonical form this crate relies on: fully reduced, denominator positive.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

/// n as a rational.
pub fn rat_i(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// n/d as a canonical rational.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= i;
    }
    acc
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// base^e for integer e of either sign; e < 0 requires base != 0.
pub fn pow_i(base: &Rational, e: i64) -> Rational {
    if e == 0 {
        return Rational::one();
    }
    let p = base.pow(e.unsigned_abs() as i32);
    if e < 0 {
        p.recip()
    } else {
        p
    }
}

/// 2^e as a rational, e of either sign.
pub fn two_pow(e: i64) -> Rational {
    pow_i(&rat_i(2), e)
}

/// Parses "p/q" or "p".
pub fn parse_rational(s: &str) -> Result<Rational> {
    let parse_int = |t: &str| -> Result<BigInt> {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::BadRational(s.to_string()))
    };
    match s.split_once('/') {
        Some((p, q)) => {
            let den = parse_int(q)?;
            if den.is_zero() {
                return Err(Error::BadRational(s.to_string()));
            }
            Ok(Rational::new(parse_int(p)?, den))
        }
        None => Ok(Rational::from_integer(parse_int(s)?)),
    }
}

/// Renders as "p/q", or "p" when the denominator is 1.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// (-1)^e as a rational sign.
pub fn sign_pow(e: u64) -> Rational {
    if e.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

pub fn is_negative(r: &Rational) -> bool {
    r.numer().is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorial_and_binomial() {
        assert_eq!(factorial(0), BigInt::one());
        assert_eq!(factorial(5), big(120));
        assert_eq!(binomial(6, 3), big(20));
        assert_eq!(binomial(4, 7), BigInt::zero());
    }

    #[test]
    fn parse_and_format_round_trip() {
        let r = parse_rational("-3/9").unwrap();
        assert_eq!(r, rat(-1, 3));
        assert_eq!(format_rational(&r), "-1/3");
        assert_eq!(format_rational(&rat_i(7)), "7");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn integer_powers() {
        assert_eq!(pow_i(&rat(2, 3), -2), rat(9, 4));
        assert_eq!(two_pow(-3), rat(1, 8));
    }
}
