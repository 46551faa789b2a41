//! Rational helpers on top of `num_rational::BigRational`, which already
//! keeps every value reduced with a positive denominator.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `a`, `-a`, `a/b`. Accepts the typographic minus `−` as well.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let cleaned: String = s
        .trim()
        .chars()
        .map(|c| if c == '\u{2212}' { '-' } else { c })
        .filter(|c| !c.is_whitespace())
        .collect();
    let bad = || Error::Parse(format!("invalid rational `{s}`"));
    if cleaned.is_empty() {
        return Err(bad());
    }
    match cleaned.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().map_err(|_| bad())?;
            let d: BigInt = d.parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in `{s}`")));
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(cleaned.parse().map_err(|_| bad())?)),
    }
}

pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Returns the positive rational `c` such that `values / c` are coprime
/// integers. Zero input gives one.
pub fn content(values: impl IntoIterator<Item = Rational>) -> Rational {
    let mut num_gcd = BigInt::zero();
    let mut den_lcm = BigInt::one();
    for v in values {
        if v.is_zero() {
            continue;
        }
        num_gcd = num_gcd.gcd(v.numer());
        den_lcm = den_lcm.lcm(v.denom());
    }
    if num_gcd.is_zero() {
        Rational::one()
    } else {
        Rational::new(num_gcd.abs(), den_lcm)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_reduces() {
        assert_eq!(parse_rational("2/4").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("\u{2212}1").unwrap(), rat(-1));
        assert_eq!(parse_rational(" -6/-4 ").unwrap(), ratio(3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        let zero = parse_rational("0/7").unwrap();
        assert_eq!(zero.denom(), &BigInt::one());
    }

    #[test]
    fn content_of_mixed_fractions() {
        assert_eq!(content([ratio(1, 2), ratio(3, 4)]), ratio(1, 4));
        assert_eq!(content([rat(-6), rat(4)]), rat(2));
        assert_eq!(content(Vec::<Rational>::new()), rat(1));
    }
}
