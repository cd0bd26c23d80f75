//! Helpers around [`num_rational::BigRational`].

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serializer};

pub type Rational = num_rational::BigRational;

/// Formats a rational as `a/b`, always with an explicit denominator.
pub fn fmt_rat(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `a`, `-a` or `a/b`. Whitespace around the parts is ignored.
pub fn parse_rat(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).ok()?;
            let d = BigInt::from_str(d.trim()).ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => BigInt::from_str(s).ok().map(Rational::from_integer),
    }
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `r^e` for a non-negative integer exponent.
pub fn pow(r: &Rational, e: u64) -> Rational {
    let mut base = r.clone();
    let mut acc = Rational::one();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &base;
        }
        e >>= 1;
        if e > 0 {
            base = &base * &base;
        }
    }
    acc
}

pub fn floor_to_bigint(r: &Rational) -> BigInt {
    r.floor().to_integer()
}

pub fn is_nonneg(r: &Rational) -> bool {
    !r.is_negative()
}

/// Serde adapter writing rationals as `"a/b"` strings.
pub mod serde_rat {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rat(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rat(&s).ok_or_else(|| serde::de::Error::custom(format!("bad rational {s:?}")))
    }
}

pub mod serde_rat_vec {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for r in v {
            seq.serialize_element(&fmt_rat(r))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| {
                parse_rat(s).ok_or_else(|| serde::de::Error::custom(format!("bad rational {s:?}")))
            })
            .collect()
    }
}

pub mod serde_rat_opt {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.serialize_some(&fmt_rat(r)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        let s = Option::<String>::deserialize(d)?;
        s.map(|s| parse_rat(&s).ok_or_else(|| serde::de::Error::custom(format!("bad rational {s:?}"))))
            .transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rat("6/4"), Some(ratio(3, 2)));
        assert_eq!(parse_rat("-7"), Some(int(-7)));
        assert_eq!(parse_rat("1/0"), None);
        assert_eq!(fmt_rat(&int(1)), "1/1");
        assert_eq!(fmt_rat(&ratio(-2, 6)), "-1/3");
    }

    #[test]
    fn power() {
        assert_eq!(pow(&ratio(3, 2), 3), ratio(27, 8));
        assert_eq!(pow(&ratio(3, 2), 0), int(1));
        assert!(pow(&int(-1), 3).is_negative());
    }
}
