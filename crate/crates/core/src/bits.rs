//! Finite bit strings, binary expansions and the pair-structured encodings.
//!
//! A [`BitString`] `b₁b₂⋯bₙ` denotes the dyadic rational `Σ bᵢ 2^{-i}` in
//! `[0,1)`. Expansions of dyadic rationals are always taken in terminating
//! form (the one with infinitely many trailing zeros); the all-ones form is
//! never produced.
//!
//! The pair encodings live here as well: membership in the set of dyadic
//! rationals whose expansion splits into complementary bit pairs
//! ([`dprime_check`]), the bit interleaving `b ↦ (b, 1-b)` and its inverse,
//! and the repetition code `x₁x₂x₃ ↦ x₁x₂x₂x₃x₃x₃`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{dyadic_bits, fraction_bit, is_dyadic, pow_nat, two_pow, Rational};

/// Finite binary string, most significant fractional bit first.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitString {
    bits: Vec<bool>,
}

impl BitString {
    pub fn new(bits: Vec<bool>) -> Self {
        BitString { bits }
    }

    pub fn empty() -> Self {
        BitString { bits: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// 1-indexed bit access.
    pub fn bit(&self, i: usize) -> bool {
        self.bits[i - 1]
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        self.bits.iter().copied()
    }

    pub fn push(&mut self, b: bool) {
        self.bits.push(b);
    }

    /// First `n` bits.
    pub fn prefix(&self, n: usize) -> BitString {
        BitString::new(self.bits[..n.min(self.bits.len())].to_vec())
    }

    /// The dyadic value `Σ bᵢ 2^{-i}`.
    pub fn value(&self) -> Rational {
        let mut numer = BigInt::zero();
        for &b in &self.bits {
            numer <<= 1;
            if b {
                numer += 1;
            }
        }
        if self.bits.is_empty() {
            return Rational::zero();
        }
        Rational::new(numer, BigInt::one() << self.bits.len())
    }

    /// Terminating expansion of a dyadic `q ∈ [0,1)`: all bits up to the
    /// last 1, no trailing zeros.
    pub fn terminating(q: &Rational) -> Result<BitString> {
        if q < &Rational::zero() || q >= &Rational::one() {
            return Err(Error::Domain(format!("{} outside [0,1)", q)));
        }
        let k = dyadic_bits(q)?;
        let numer = (q * two_pow(k as i64)).to_integer();
        let mut bits = Vec::with_capacity(k as usize);
        for i in (0..k).rev() {
            bits.push(((&numer >> i as usize) & BigInt::one()).is_one());
        }
        Ok(BitString::new(bits))
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{}\"", self)
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut bits = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '0' => bits.push(false),
                '1' => bits.push(true),
                _ => return Err(Error::Parse(format!("bad bit {:?} in {:?}", c, s))),
            }
        }
        Ok(BitString::new(bits))
    }
}

/// Terminating expansion of a dyadic `q ∈ [0,1)` truncated or zero-padded
/// to exactly `n` bits, so `value(result) ≤ q < value(result) + 2^{-n}`.
pub fn to_binary_expansion(q: &Rational, n: usize) -> Result<BitString> {
    let full = BitString::terminating(q)?;
    let mut bits: Vec<bool> = full.bits;
    bits.truncate(n);
    bits.resize(n, false);
    Ok(BitString::new(bits))
}

/// Result of a complementary-pair membership test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DPrimeCheck {
    pub member: bool,
    /// Number of pairs when `member`.
    pub k: Option<usize>,
}

/// Tests whether a dyadic `q ∈ (0,1)` has an expansion `q₁⋯q₂ₖ` in which
/// every pair satisfies `q₂ᵢ = 1 - q₂ᵢ₋₁`.
///
/// The terminating expansion is padded with one trailing zero when its
/// length is odd (0.1 ≡ 0.10); any longer padding would introduce a "00"
/// pair and can never help.
pub fn dprime_check(q: &Rational) -> Result<DPrimeCheck> {
    if q <= &Rational::zero() || q >= &Rational::one() {
        return Err(Error::Domain(format!("{} outside (0,1)", q)));
    }
    let mut bits = BitString::terminating(q)?.bits;
    if bits.len() % 2 == 1 {
        bits.push(false);
    }
    let ok = bits.chunks(2).all(|p| p[1] != p[0]);
    Ok(DPrimeCheck {
        member: ok,
        k: ok.then_some(bits.len() / 2),
    })
}

/// Interleave every bit with its complement: `b ↦ b(1-b)`.
///
/// The image of a nonempty string is always in the complementary-pair set.
pub fn interleave_encode(x: &BitString) -> BitString {
    let mut out = Vec::with_capacity(2 * x.len());
    for b in x.iter() {
        out.push(b);
        out.push(!b);
    }
    BitString::new(out)
}

/// Inverse of [`interleave_encode`]: keep the odd-indexed bits.
pub fn interleave_decode(x: &BitString) -> Result<BitString> {
    if !x.len().is_multiple_of(2) {
        return Err(Error::InvalidInput(format!(
            "interleave_decode needs even length, got {}",
            x.len()
        )));
    }
    Ok(BitString::new(x.iter().step_by(2).collect()))
}

/// Repetition code: bit `xᵢ` of `σ` is written `i` times, and the result is
/// read as a dyadic rational. Total length `m(m+1)/2` for `|σ| = m`.
pub fn repetition_encode(sigma: &BitString) -> Result<Rational> {
    if sigma.is_empty() {
        return Err(Error::InvalidInput(
            "repetition_encode of empty string".into(),
        ));
    }
    Ok(repetition_expand(sigma).value())
}

/// The repeated bit string itself (`x₁x₂x₂x₃x₃x₃⋯`).
pub fn repetition_expand(sigma: &BitString) -> BitString {
    let m = sigma.len();
    let mut out = Vec::with_capacity(m * (m + 1) / 2);
    for (i, b) in sigma.iter().enumerate() {
        out.extend(std::iter::repeat_n(b, i + 1));
    }
    BitString::new(out)
}

/// On-demand expansion bits of a real in [0,1).
///
/// Accessors are finite-depth: indices past `max_depth` are an error, never
/// a silent truncation. Rational-backed sources compute bits exactly;
/// pattern-backed sources replay a stored prefix and an optional period.
#[derive(Clone, Debug)]
pub enum BitSource {
    Rational {
        value: Rational,
        max_depth: u64,
    },
    Pattern {
        prefix: BitString,
        period: Option<BitString>,
        max_depth: u64,
    },
}

impl BitSource {
    pub fn from_rational(value: Rational, max_depth: u64) -> Result<Self> {
        if value < Rational::zero() || value >= Rational::one() {
            return Err(Error::Domain(format!("{} outside [0,1)", value)));
        }
        Ok(BitSource::Rational { value, max_depth })
    }

    pub fn from_pattern(prefix: BitString, period: Option<BitString>, max_depth: u64) -> Self {
        BitSource::Pattern {
            prefix,
            period,
            max_depth,
        }
    }

    pub fn max_depth(&self) -> u64 {
        match self {
            BitSource::Rational { max_depth, .. } | BitSource::Pattern { max_depth, .. } => {
                *max_depth
            }
        }
    }

    /// 1-indexed expansion bit.
    pub fn bit(&self, i: u64) -> Result<bool> {
        if i == 0 || i > self.max_depth() {
            return Err(Error::InsufficientPrecision(format!(
                "bit {} beyond accessor depth {}",
                i,
                self.max_depth()
            )));
        }
        match self {
            BitSource::Rational { value, .. } => Ok(fraction_bit(value, i)),
            BitSource::Pattern { prefix, period, .. } => {
                let idx = (i - 1) as usize;
                if idx < prefix.len() {
                    Ok(prefix.bit(idx + 1))
                } else {
                    match period {
                        Some(p) if !p.is_empty() => Ok(p.bit((idx - prefix.len()) % p.len() + 1)),
                        _ => Err(Error::InsufficientPrecision(format!(
                            "bit {} beyond stored pattern of length {}",
                            i,
                            prefix.len()
                        ))),
                    }
                }
            }
        }
    }

    /// First `n` bits as a string.
    pub fn prefix(&self, n: u64) -> Result<BitString> {
        let mut bits = Vec::with_capacity(n as usize);
        for i in 1..=n {
            bits.push(self.bit(i)?);
        }
        Ok(BitString::new(bits))
    }

    /// Exact value when the source determines one (rational, or eventually
    /// periodic pattern).
    pub fn exact_value(&self) -> Option<Rational> {
        match self {
            BitSource::Rational { value, .. } => Some(value.clone()),
            BitSource::Pattern { prefix, period, .. } => match period {
                Some(p) if !p.is_empty() => {
                    let pre = prefix.value();
                    let once = p.value() * two_pow(-(prefix.len() as i64));
                    let scale = Rational::one() - two_pow(-(p.len() as i64));
                    Some(pre + once / scale)
                }
                _ => None,
            },
        }
    }
}

/// The smallest even-length expansion prefix of `β` whose value is `≥ q`,
/// returned as the prefix itself (its value is the rounded-up rational).
///
/// Requires `q < β`; on pattern sources whose every even prefix is a
/// complementary-pair value, the result value lies in `[q, β)` and is a
/// member of that set.
pub fn dprime_round_up(q: &Rational, beta: &BitSource) -> Result<BitString> {
    let mut bits = Vec::new();
    let mut k: u64 = 1;
    loop {
        let i = 2 * k - 1;
        if i + 1 > beta.max_depth() {
            return Err(Error::InsufficientPrecision(format!(
                "no even prefix of depth <= {} reaches {}",
                beta.max_depth(),
                q
            )));
        }
        bits.push(beta.bit(i)?);
        bits.push(beta.bit(i + 1)?);
        let candidate = BitString::new(bits.clone());
        if &candidate.value() >= q {
            return Ok(candidate);
        }
        k += 1;
    }
}

/// Eventually periodic binary expansion of a rational in `[0,1)`:
/// `(preperiod, period)` with empty period for dyadics (trailing zeros).
pub fn periodic_expansion(q: &Rational) -> Result<(BitString, BitString)> {
    if q < &Rational::zero() || q >= &Rational::one() {
        return Err(Error::Domain(format!("{} outside [0,1)", q)));
    }
    if is_dyadic(q) {
        return Ok((BitString::terminating(q)?, BitString::empty()));
    }
    // Long division by the denominator; the remainder sequence must cycle.
    let den = q.denom().clone();
    let mut rem = q.numer().clone();
    let mut seen: Vec<BigInt> = Vec::new();
    let mut bits: Vec<bool> = Vec::new();
    loop {
        if let Some(pos) = seen.iter().position(|r| r == &rem) {
            let pre = BitString::new(bits[..pos].to_vec());
            let per = BitString::new(bits[pos..].to_vec());
            return Ok((pre, per));
        }
        seen.push(rem.clone());
        rem <<= 1;
        if rem >= den {
            bits.push(true);
            rem -= &den;
        } else {
            bits.push(false);
        }
    }
}

/// `Σ bitᵢ · base^{-i}` over an eventually periodic expansion, exactly.
pub fn periodic_series(pre: &BitString, per: &BitString, base: u32) -> Rational {
    let b = Rational::from_integer(BigInt::from(base));
    let binv = b.recip();
    let mut pre_sum = Rational::zero();
    let mut scale = Rational::one();
    for bit in pre.iter() {
        scale *= &binv;
        if bit {
            pre_sum += &scale;
        }
    }
    if per.is_empty() {
        return pre_sum;
    }
    let mut per_once = Rational::zero();
    let mut pscale = scale;
    for bit in per.iter() {
        pscale *= &binv;
        if bit {
            per_once += &pscale;
        }
    }
    let ratio = Rational::one() - pow_nat(&binv, per.len() as u32);
    pre_sum + per_once / ratio
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn bs(s: &str) -> BitString {
        s.parse().unwrap()
    }

    #[test]
    fn expansion_examples() {
        assert_eq!(to_binary_expansion(&ratio(1, 2), 4).unwrap(), bs("1000"));
        assert_eq!(to_binary_expansion(&ratio(5, 8), 2).unwrap(), bs("10"));
        assert_eq!(
            to_binary_expansion(&ratio(39, 64), 6).unwrap(),
            bs("100111")
        );
    }

    #[test]
    fn expansion_rejects_bad_input() {
        assert!(matches!(
            to_binary_expansion(&ratio(1, 3), 4),
            Err(Error::NotDyadic(_))
        ));
        assert!(matches!(
            to_binary_expansion(&int(1), 4),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            to_binary_expansion(&ratio(-1, 2), 4),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn expansion_bracket_postcondition() {
        let q = ratio(39, 64);
        for n in 1..10 {
            let e = to_binary_expansion(&q, n).unwrap();
            let v = e.value();
            assert!(v <= q && q < v + two_pow(-(n as i64)));
        }
    }

    #[test]
    fn dprime_membership_examples() {
        // 0.1010 = 5/8, two complementary pairs.
        let r = dprime_check(&ratio(5, 8)).unwrap();
        assert_eq!(
            r,
            DPrimeCheck {
                member: true,
                k: Some(2)
            }
        );
        // 0.1110 = 7/8 has the non-complementary pair "11".
        let r = dprime_check(&ratio(7, 8)).unwrap();
        assert_eq!(
            r,
            DPrimeCheck {
                member: false,
                k: None
            }
        );
        // 0.10 = 1/2, a single pair after padding the odd expansion.
        let r = dprime_check(&ratio(1, 2)).unwrap();
        assert_eq!(
            r,
            DPrimeCheck {
                member: true,
                k: Some(1)
            }
        );
    }

    #[test]
    fn interleave_examples() {
        assert_eq!(interleave_encode(&bs("10")), bs("1001"));
        assert_eq!(interleave_encode(&bs("")), bs(""));
        assert_eq!(interleave_encode(&bs("11")), bs("1010"));
        assert_eq!(interleave_decode(&bs("1001")).unwrap(), bs("10"));
        assert_eq!(interleave_decode(&bs("1010")).unwrap(), bs("11"));
        assert_eq!(interleave_decode(&bs("01")).unwrap(), bs("0"));
        assert!(interleave_decode(&bs("011")).is_err());
    }

    #[test]
    fn repetition_examples() {
        assert_eq!(repetition_encode(&bs("101")).unwrap(), ratio(39, 64));
        assert_eq!(repetition_encode(&bs("1")).unwrap(), ratio(1, 2));
        assert!(repetition_encode(&bs("0110")).unwrap() < ratio(1, 2));
        assert!(repetition_encode(&bs("")).is_err());
    }

    #[test]
    fn round_up_to_pair_value() {
        // β = 7/12 = 0.100101...
        let beta = BitSource::from_rational(ratio(7, 12), 64).unwrap();
        // The first even prefix with value >= 1/2 is "10" itself.
        let p = dprime_round_up(&ratio(1, 2), &beta).unwrap();
        assert_eq!(p, bs("10"));
        // 9/16 = 0.1001 is an even-prefix value, so it rounds up to itself.
        let p = dprime_round_up(&ratio(9, 16), &beta).unwrap();
        assert_eq!(p, bs("1001"));
        assert_eq!(p.value(), ratio(9, 16));
        assert!(p.value() < ratio(7, 12));
        // q = 0 is reached by the first two bits.
        let p = dprime_round_up(&Rational::zero(), &beta).unwrap();
        assert_eq!(p.len(), 2);
    }

    #[test]
    fn round_up_exhaustion_is_an_error() {
        let beta = BitSource::from_pattern(bs("10"), None, 2);
        // Every even prefix available has value 1/2 < 5/8.
        assert!(matches!(
            dprime_round_up(&ratio(5, 8), &beta),
            Err(Error::InsufficientPrecision(_))
        ));
    }

    #[test]
    fn periodic_expansion_of_rationals() {
        let (pre, per) = periodic_expansion(&ratio(7, 12)).unwrap();
        assert_eq!(format!("{}", pre), "10");
        assert_eq!(format!("{}", per), "01");
        let (pre, per) = periodic_expansion(&ratio(5, 8)).unwrap();
        assert_eq!(format!("{}", pre), "101");
        assert!(per.is_empty());
        let (pre, per) = periodic_expansion(&ratio(1, 3)).unwrap();
        assert_eq!(periodic_series(&pre, &per, 2), ratio(1, 3));
    }

    #[test]
    fn pattern_source_value() {
        let src = BitSource::from_pattern(bs("10"), Some(bs("01")), 128);
        assert_eq!(src.exact_value().unwrap(), ratio(7, 12));
        assert_eq!(src.prefix(6).unwrap(), bs("100101"));
        assert!(src.bit(200).is_err());
    }
}
