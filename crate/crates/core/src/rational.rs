//! Exact rational numbers and their textual form.
//!
//! Rationals travel through every file format as strings: `"p/q"` or a bare
//! integer `"n"`. Output is always in lowest terms with a positive
//! denominator, and an integral value is written without `/1`.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn parse(text: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("`{text}` is not a rational of the form p/q or n"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, d),
        None => (text, "1"),
    };
    let is_int = |s: &str| {
        let digits = s.strip_prefix('-').unwrap_or(s);
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !is_int(num) || !is_int(den) {
        return Err(bad());
    }
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

pub fn format(value: &Rational) -> String {
    // `Ratio` keeps itself reduced with a positive denominator, and its
    // `Display` drops a unit denominator.
    value.to_string()
}

/// `serialize_with` adapter writing a rational in its string form.
pub fn serialize<S: serde::Serializer>(value: &Rational, serializer: S) -> Result<S::Ok, S::Error> {
    serializer.serialize_str(&format(value))
}

/// `deserialize_with` adapter reading a rational from its string form.
pub fn deserialize<'de, D: serde::Deserializer<'de>>(
    deserializer: D,
) -> Result<Rational, D::Error> {
    let text = <String as serde::Deserialize>::deserialize(deserializer)?;
    parse(&text).map_err(serde::de::Error::custom)
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn to_f64(value: &Rational) -> f64 {
    value.to_f64().unwrap_or_else(|| {
        // Only reachable for magnitudes beyond f64 range.
        if value.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// `1 - 2^-k`, the discount factors used by the Blackwell sweep.
pub fn one_minus_pow2(k: u32) -> Rational {
    let den = BigInt::one() << k;
    Rational::new(&den - BigInt::one(), den)
}

pub fn is_discount(beta: &Rational) -> bool {
    !beta.is_negative() && beta < &Rational::one()
}

pub fn check_discount(beta: &Rational) -> Result<()> {
    if is_discount(beta) {
        Ok(())
    } else {
        Err(Error::InvalidBeta(beta.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_integers() {
        assert_eq!(parse("3/2").unwrap(), ratio(3, 2));
        assert_eq!(parse("-1").unwrap(), int(-1));
        assert_eq!(parse("6/4").unwrap(), ratio(3, 2));
        assert_eq!(parse("1/-2").unwrap(), ratio(-1, 2));
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "1/0", "a", "1.5", " 1", "1/", "/2", "+1", "--1"] {
            assert!(parse(s).is_err(), "{s:?} should not parse");
        }
    }

    #[test]
    fn formats_lowest_terms() {
        assert_eq!(format(&parse("4/6").unwrap()), "2/3");
        assert_eq!(format(&parse("-8/4").unwrap()), "-2");
        assert_eq!(format(&parse("0/5").unwrap()), "0");
        assert_eq!(format(&one_minus_pow2(4)), "15/16");
    }

    #[test]
    fn discount_range() {
        assert!(is_discount(&int(0)));
        assert!(is_discount(&ratio(9, 10)));
        assert!(!is_discount(&int(1)));
        assert!(!is_discount(&ratio(-1, 3)));
    }
}
