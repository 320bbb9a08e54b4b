//! Exact rational scalars.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Elements of the ground field. Always normalized: lowest terms, positive denominator.
pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn frac(p: i64, q: i64) -> Scalar {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

/// `+1` for even exponents, `-1` for odd ones (negative exponents allowed).
pub fn sign(e: i64) -> Scalar {
    if e.rem_euclid(2) == 0 {
        one()
    } else {
        -one()
    }
}

/// Formats as `p` or `p/q`.
pub fn format_scalar(x: &Scalar) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `p` or `p/q` with optional sign on `p`. Decimal or exponent notation is rejected.
pub fn parse_scalar(s: &str) -> Result<Scalar, Error> {
    let t = s.trim();
    let bad = || Error::Parse(format!("not an exact rational: {s:?}"));
    let ok_int = |u: &str| {
        let u = u.strip_prefix('-').or_else(|| u.strip_prefix('+')).unwrap_or(u);
        !u.is_empty() && u.bytes().all(|b| b.is_ascii_digit())
    };
    let (p, q) = match t.split_once('/') {
        Some((p, q)) => (p, q),
        None => (t, "1"),
    };
    if !ok_int(p) || !q.bytes().all(|b| b.is_ascii_digit()) || q.is_empty() {
        return Err(bad());
    }
    let p = BigInt::from_str(p.trim_start_matches('+')).map_err(|_| bad())?;
    let q = BigInt::from_str(q).map_err(|_| bad())?;
    if q.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(p, q))
}

pub fn is_unit_sign(x: &Scalar) -> bool {
    x.denom().is_one() && x.numer().abs().is_one()
}

/// Serde adapter storing a scalar as its `p/q` string.
pub mod serde_scalar {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Scalar, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_scalar(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Scalar, D::Error> {
        let s = String::deserialize(d)?;
        parse_scalar(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_scalar("3").unwrap(), int(3));
        assert_eq!(parse_scalar("-6/4").unwrap(), frac(-3, 2));
        assert_eq!(format_scalar(&frac(-3, 2)), "-3/2");
        assert_eq!(format_scalar(&int(7)), "7");
        assert!(parse_scalar("0.5e1").is_err());
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("1/-2").is_err());
        assert!(parse_scalar("").is_err());
    }
}
