//! Exact rational scalars.
//!
//! Every quantity in this crate is a [`Rational`] (arbitrary-precision,
//! always in lowest terms with a positive denominator) or an interval of
//! them. There is no floating-point path: all comparisons that certify an
//! inequality are exact.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number, the universal scalar of the crate.
pub type Rational = num_rational::BigRational;

/// `p/q` from machine integers.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Integer as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Natural as a rational.
pub fn nat(n: u64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Exact `2^e` for any integer exponent.
pub fn two_pow(e: i64) -> Rational {
    let mag = BigInt::one() << e.unsigned_abs() as usize;
    if e >= 0 {
        Rational::from_integer(mag)
    } else {
        Rational::new(BigInt::one(), mag)
    }
}

/// Exact integer power with negative exponents allowed (errors on 0^-k).
pub fn pow_int(base: &Rational, exp: i64) -> Result<Rational> {
    if exp < 0 && base.is_zero() {
        return Err(Error::Domain("zero to a negative power".into()));
    }
    let e = exp.unsigned_abs() as u32;
    let p = pow_nat(base, e);
    if exp >= 0 {
        Ok(p)
    } else {
        Ok(p.recip())
    }
}

/// Exact nonnegative integer power.
pub fn pow_nat(base: &Rational, exp: u32) -> Rational {
    let mut acc = Rational::one();
    let mut sq = base.clone();
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &sq;
        }
        e >>= 1;
        if e > 0 {
            sq = &sq * &sq;
        }
    }
    acc
}

/// True if the denominator is a power of two.
pub fn is_dyadic(q: &Rational) -> bool {
    let d = q.denom();
    if d.is_one() {
        return true;
    }
    let mag: &BigUint = d.magnitude();
    let tz = mag.trailing_zeros().unwrap_or(0);
    (mag >> tz).is_one()
}

/// Least `k` with `q * 2^k` integral. Errors on non-dyadic input.
pub fn dyadic_bits(q: &Rational) -> Result<u64> {
    if !is_dyadic(q) {
        return Err(Error::NotDyadic(format!("{}", q)));
    }
    Ok(q.denom().magnitude().trailing_zeros().unwrap_or(0))
}

/// `floor(q * 2^k) / 2^k`: the largest k-bit dyadic not exceeding `q`.
pub fn truncate_dyadic(q: &Rational, k: u64) -> Rational {
    let scaled = q * two_pow(k as i64);
    Rational::new(scaled.floor().to_integer(), BigInt::one() << k as usize)
}

/// The i-th fractional bit (1-indexed) of `q` in [0,1), terminating form
/// for dyadics.
pub fn fraction_bit(q: &Rational, i: u64) -> bool {
    let scaled = q * two_pow(i as i64);
    scaled.floor().to_integer().is_odd()
}

/// Nearest integer with ties broken downward: round(5/2) = 2.
pub fn round_half_down(q: &Rational) -> BigInt {
    (q - ratio(1, 2)).ceil().to_integer()
}

/// `ceil(log2 d)` for d >= 1.
pub fn ceil_log2(d: u64) -> u32 {
    debug_assert!(d >= 1);
    64 - (d - 1).leading_zeros()
}

/// Parse "p/q" (or a bare integer) with a positive value check left to the
/// caller.
pub fn parse_rational(s: &str) -> Result<Rational> {
    s.trim()
        .parse::<Rational>()
        .map_err(|e| Error::Parse(format!("bad rational {:?}: {}", s, e)))
}

/// Canonical "p/q" rendering; always spells out the denominator so the
/// serialized form round-trips unambiguously.
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Fixed-point decimal rendering (floor at `digits` places) computed by
/// integer division; used by plot output, never fed back into arithmetic.
pub fn decimal_string(q: &Rational, digits: u32) -> String {
    let neg = q.is_negative();
    let a = q.abs();
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = (&a * Rational::from_integer(scale.clone()))
        .floor()
        .to_integer();
    let (ipart, fpart) = scaled.div_rem(&scale);
    let mut s = format!("{}.{:0width$}", ipart, fpart, width = digits as usize);
    if neg && (!ipart.is_zero() || !fpart.is_zero()) {
        s.insert(0, '-');
    }
    s
}

/// Serde adapter: rationals as "p/q" strings inside JSON reports.
pub mod rational_string {
    use super::{format_rational, parse_rational, Rational};
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let raw = String::deserialize(d)?;
        parse_rational(&raw).map_err(de::Error::custom)
    }
}

/// Serde adapter for `Option<Rational>`.
pub mod rational_string_opt {
    use super::{format_rational, parse_rational, Rational};
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(
        q: &Option<Rational>,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        match q {
            Some(q) => s.serialize_some(&format_rational(q)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Option<Rational>, D::Error> {
        let raw = Option::<String>::deserialize(d)?;
        raw.map(|s| parse_rational(&s).map_err(de::Error::custom))
            .transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_pow_signs() {
        assert_eq!(two_pow(0), int(1));
        assert_eq!(two_pow(3), int(8));
        assert_eq!(two_pow(-4), ratio(1, 16));
    }

    #[test]
    fn dyadic_predicates() {
        assert!(is_dyadic(&ratio(5, 8)));
        assert!(is_dyadic(&int(3)));
        assert!(!is_dyadic(&ratio(1, 3)));
        assert_eq!(dyadic_bits(&ratio(5, 8)).unwrap(), 3);
        assert_eq!(dyadic_bits(&ratio(1, 2)).unwrap(), 1);
        assert!(dyadic_bits(&ratio(1, 12)).is_err());
    }

    #[test]
    fn truncation_is_monotone_floor() {
        assert_eq!(truncate_dyadic(&ratio(1, 3), 4), ratio(5, 16));
        assert_eq!(truncate_dyadic(&ratio(5, 8), 3), ratio(5, 8));
        assert_eq!(truncate_dyadic(&ratio(5, 8), 1), ratio(1, 2));
    }

    #[test]
    fn fraction_bits_of_seven_twelfths() {
        // 7/12 = 0.100101...
        let q = ratio(7, 12);
        let bits: Vec<bool> = (1..=6).map(|i| fraction_bit(&q, i)).collect();
        assert_eq!(bits, vec![true, false, false, true, false, true]);
    }

    #[test]
    fn rounding_ties_go_down() {
        assert_eq!(round_half_down(&ratio(5, 2)), BigInt::from(2));
        assert_eq!(round_half_down(&ratio(13, 5)), BigInt::from(3));
        assert_eq!(round_half_down(&ratio(-1, 2)), BigInt::from(-1));
    }

    #[test]
    fn ceil_log2_small() {
        assert_eq!(ceil_log2(1), 0);
        assert_eq!(ceil_log2(2), 1);
        assert_eq!(ceil_log2(3), 2);
        assert_eq!(ceil_log2(4), 2);
        assert_eq!(ceil_log2(5), 3);
    }

    #[test]
    fn parse_and_format_roundtrip() {
        let q = parse_rational("39/64").unwrap();
        assert_eq!(q, ratio(39, 64));
        assert_eq!(format_rational(&q), "39/64");
        assert_eq!(format_rational(&int(5)), "5/1");
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(decimal_string(&ratio(1, 3), 6), "0.333333");
        assert_eq!(decimal_string(&ratio(-1, 4), 4), "-0.2500");
        assert_eq!(decimal_string(&int(2), 2), "2.00");
    }
}
