//! Exact rational helpers: construction, parsing and the string form used in
//! every JSON document (`"num/den"`, never a decimal).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{DofError, Result};

pub type Rational = BigRational;

/// Denominator cap applied when a decimal is converted to a rational.
pub const DEFAULT_MAX_DENOMINATOR: u64 = 1_000_000;

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn min(a: Rational, b: Rational) -> Rational {
    if a <= b {
        a
    } else {
        b
    }
}

pub fn max(a: Rational, b: Rational) -> Rational {
    if a >= b {
        a
    } else {
        b
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Canonical `"num/den"` form of a reduced rational.
pub fn format(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `"p/q"`, a bare integer, or a decimal. Decimals go through
/// [`limit_denominator`] with [`DEFAULT_MAX_DENOMINATOR`].
pub fn parse(s: &str) -> Result<Rational> {
    parse_with_cap(s, DEFAULT_MAX_DENOMINATOR)
}

pub fn parse_with_cap(s: &str, max_den: u64) -> Result<Rational> {
    let t = s.trim();
    let bad = || DofError::ParseRational(s.to_string());
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    if let Ok(n) = t.parse::<BigInt>() {
        return Ok(Rational::from_integer(n));
    }
    let x: f64 = t.parse().map_err(|_| bad())?;
    if !x.is_finite() {
        return Err(bad());
    }
    let exact = Rational::from_float(x).ok_or_else(bad)?;
    Ok(limit_denominator(&exact, max_den))
}

/// Closest rational to `x` whose denominator does not exceed `max_den`,
/// found from the continued-fraction convergents and the best semiconvergent.
pub fn limit_denominator(x: &Rational, max_den: u64) -> Rational {
    let cap = BigInt::from(max_den.max(1));
    if x.denom() <= &cap {
        return x.clone();
    }
    let (mut p0, mut q0, mut p1, mut q1) = (BigInt::zero(), BigInt::one(), BigInt::one(), BigInt::zero());
    let (mut n, mut d) = (x.numer().clone(), x.denom().clone());
    loop {
        let a = n.div_floor(&d);
        let q2 = &q0 + &a * &q1;
        if q2 > cap {
            break;
        }
        let p2 = &p0 + &a * &p1;
        p0 = std::mem::replace(&mut p1, p2);
        q0 = std::mem::replace(&mut q1, q2);
        let r = &n - &a * &d;
        n = std::mem::replace(&mut d, r);
    }
    let k = (&cap - &q0).div_floor(&q1);
    let semi = Rational::new(&p0 + &k * &p1, &q0 + &k * &q1);
    let conv = Rational::new(p1, q1);
    if (&semi - x).abs() <= (&conv - x).abs() {
        semi
    } else {
        conv
    }
}

/// Least common multiple of the denominators; the smallest positive integer
/// that clears every fraction in `values`.
pub fn common_denominator<'a, I: IntoIterator<Item = &'a Rational>>(values: I) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

pub(crate) mod serde_str {
    use serde::{Deserialize, Deserializer, Serializer};

    use super::Rational;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::format(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        super::parse(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fraction_integer_and_decimal() {
        assert_eq!(parse("3/6").unwrap(), ratio(1, 2));
        assert_eq!(parse(" 2 ").unwrap(), int(2));
        assert_eq!(parse("0.25").unwrap(), ratio(1, 4));
        assert_eq!(parse("0.75").unwrap(), ratio(3, 4));
        assert!(parse("1/0").is_err());
        assert!(parse("abc").is_err());
        assert!(parse("nan").is_err());
    }

    #[test]
    fn decimal_respects_denominator_cap() {
        let r = parse_with_cap("0.3333333333", 1000).unwrap();
        assert_eq!(r, ratio(1, 3));
        let pi = parse_with_cap("3.141592653589793", 1000).unwrap();
        assert_eq!(pi, ratio(355, 113));
        assert!(parse("0.1234567891").unwrap().denom() <= &BigInt::from(DEFAULT_MAX_DENOMINATOR));
    }

    #[test]
    fn format_is_decimal_free() {
        assert_eq!(format(&ratio(6, 4)), "3/2");
        assert_eq!(format(&int(0)), "0/1");
        assert_eq!(format(&ratio(-1, 3)), "-1/3");
    }

    #[test]
    fn common_denominator_is_lcm() {
        let v = [ratio(1, 4), ratio(5, 6), int(3)];
        assert_eq!(common_denominator(&v), BigInt::from(12));
    }
}
