//! Certified rational enclosures.
//!
//! Irrational quantities (ℓ-th roots and the abscissae they feed) are never
//! approximated by floats; they are carried as shrinking rational intervals
//! whose endpoints bracket the target exactly. Soundness of an enclosure of
//! `x^{1/ℓ}` is always checkable from the outside: `lo^ℓ ≤ x ≤ hi^ℓ`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{pow_nat, rational_string, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Closed rational interval `[lo, hi]`, `lo ≤ hi`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalInterval {
    #[serde(with = "rational_string")]
    pub lo: Rational,
    #[serde(with = "rational_string")]
    pub hi: Rational,
}

impl RationalInterval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidInput(format!(
                "interval endpoints out of order: {} > {}",
                lo, hi
            )));
        }
        Ok(RationalInterval { lo, hi })
    }

    pub fn point(v: Rational) -> Self {
        RationalInterval {
            lo: v.clone(),
            hi: v,
        }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, v: &Rational) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(BigInt::from(2))
    }

    /// Outward sum.
    pub fn add(&self, other: &Self) -> Self {
        RationalInterval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    /// Outward difference `self - other`.
    pub fn sub(&self, other: &Self) -> Self {
        RationalInterval {
            lo: &self.lo - &other.hi,
            hi: &self.hi - &other.lo,
        }
    }

    pub fn add_scalar(&self, v: &Rational) -> Self {
        RationalInterval {
            lo: &self.lo + v,
            hi: &self.hi + v,
        }
    }

    /// Scale by a nonnegative rational.
    pub fn scale(&self, v: &Rational) -> Self {
        debug_assert!(!v.is_negative());
        RationalInterval {
            lo: &self.lo * v,
            hi: &self.hi * v,
        }
    }

    /// `ℓ`-th power of a nonnegative interval (monotone, so endpointwise).
    pub fn pow(&self, ell: u32) -> Self {
        debug_assert!(!self.lo.is_negative());
        RationalInterval {
            lo: pow_nat(&self.lo, ell),
            hi: pow_nat(&self.hi, ell),
        }
    }
}

/// Default cap on comparison refinements: each step halves the widths, so
/// hitting it means two closed-form quantities differ by less than
/// 2^{-cap} of the initial scale and the comparison is reported undecided
/// rather than guessed.
pub const REFINE_CAP: u32 = 64;

/// Certified enclosure of `x^{1/ℓ}` for `x ≥ 0`, of width at most `eps`.
///
/// Exact (a point) whenever `x` is a perfect ℓ-th power of a rational;
/// otherwise bisection with exact endpoint arithmetic, preserving
/// `lo^ℓ ≤ x ≤ hi^ℓ` and `lo ≥ 0` at every step.
pub fn root_enclosure(x: &Rational, ell: u32, eps: &Rational) -> Result<RationalInterval> {
    if x.is_negative() {
        return Err(Error::Domain(format!("root of negative {}", x)));
    }
    if ell == 0 {
        return Err(Error::InvalidInput("zeroth root".into()));
    }
    if !eps.is_positive() {
        return Err(Error::InvalidInput(
            "enclosure width must be positive".into(),
        ));
    }
    if x.is_zero() {
        return Ok(RationalInterval::point(Rational::zero()));
    }
    if ell == 1 {
        return Ok(RationalInterval::point(x.clone()));
    }
    if let Some(r) = exact_root(x, ell) {
        return Ok(RationalInterval::point(r));
    }
    let one = Rational::one();
    let (mut lo, mut hi) = if x >= &one {
        (one, x.clone())
    } else {
        (x.clone(), one)
    };
    while &(&hi - &lo) > eps {
        let mid = (&lo + &hi) / Rational::from_integer(BigInt::from(2));
        let mp = pow_nat(&mid, ell);
        match mp.cmp(x) {
            std::cmp::Ordering::Less => lo = mid,
            std::cmp::Ordering::Greater => hi = mid,
            std::cmp::Ordering::Equal => return Ok(RationalInterval::point(mid)),
        }
    }
    RationalInterval::new(lo, hi)
}

/// The exact rational ℓ-th root of `x ≥ 0`, when one exists.
pub fn exact_root(x: &Rational, ell: u32) -> Option<Rational> {
    let rn = x.numer().magnitude().nth_root(ell);
    let rd = x.denom().magnitude().nth_root(ell);
    if &rn.pow(ell) == x.numer().magnitude() && &rd.pow(ell) == x.denom().magnitude() {
        Some(Rational::new(BigInt::from(rn), BigInt::from(rd)))
    } else {
        None
    }
}
