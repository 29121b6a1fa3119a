//! Left-c.e. reals as effective nondecreasing rational stage sequences.
//!
//! A [`LeftCEReal`] is a total stage evaluator `n ↦ stage(n)` that never
//! decreases, optionally carrying an exactly known rational limit (fixture
//! mode). Every limit-level inequality in this crate is checked only on
//! reals with exact limits, so the checks are exact with zero tolerance;
//! genuine left-c.e. reals have inaccessible limits and are out of reach of
//! any decision procedure.

use num_traits::{One, Signed, Zero};

use crate::bits::{periodic_expansion, BitString};
use crate::error::{Error, Result};
use crate::rational::{
    fraction_bit, pow_nat, ratio, round_half_down, truncate_dyadic, two_pow, Rational,
};
use num_bigint::BigInt;

/// Positive gap schedule `gap(n) = coeff · base^(n+shift)`, strictly
/// decreasing to zero (requires `0 < base < 1`, `coeff > 0`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapSchedule {
    pub coeff: Rational,
    pub base: Rational,
    pub shift: u32,
}

impl GapSchedule {
    pub fn new(coeff: Rational, base: Rational, shift: u32) -> Result<Self> {
        if !coeff.is_positive() {
            return Err(Error::Construction(format!(
                "gap coefficient {} not positive",
                coeff
            )));
        }
        if !base.is_positive() || base >= Rational::one() {
            return Err(Error::Construction(format!(
                "gap base {} outside (0,1)",
                base
            )));
        }
        Ok(GapSchedule { coeff, base, shift })
    }

    pub fn gap(&self, n: u64) -> Rational {
        let e = (n as u32).saturating_add(self.shift);
        &self.coeff * pow_nat(&self.base, e)
    }
}

#[derive(Clone, Debug)]
enum StageRule {
    /// `stage(n) = limit - gap(n)`.
    Fixture { limit: Rational, gap: GapSchedule },
    /// Partial sums of a finite enumeration; constant once exhausted.
    PartialSums { terms: Vec<Rational> },
    Sum {
        lhs: Box<LeftCEReal>,
        rhs: Box<LeftCEReal>,
    },
    Scale {
        inner: Box<LeftCEReal>,
        factor: Rational,
    },
    /// Interleaving driven by the exact limit: stage `n` interleaves the
    /// first `min(n, cap)` expansion bits of the limit. This is the
    /// canonical below-approximation of the interleaved real; transforming
    /// arbitrary stage sequences pointwise does not converge to it when
    /// the inner limit is approached across an expansion boundary.
    InterleaveLimit { limit: Rational, cap: u64 },
    /// Pointwise interleaving of the inner stages (no limit claimed),
    /// each stage truncated to `coerce_bits` fractional bits first.
    InterleaveStages {
        inner: Box<LeftCEReal>,
        coerce_bits: u64,
    },
    /// Values of repetition-encoded prefixes of a bit pattern.
    RepetitionPrefixes { stages: Vec<Rational> },
}

/// Effective nondecreasing rational sequence, optionally with an exact
/// limit.
#[derive(Clone, Debug)]
pub struct LeftCEReal {
    label: String,
    rule: StageRule,
    exact_limit: Option<Rational>,
}

/// Stages are truncated to this many fractional bits before interleaving
/// unless a fixture overrides it. Truncation (a monotone floor) keeps the
/// transformed stage sequence nondecreasing; at 2x the default stage depth
/// it never bites on the standard fixtures.
pub const DEFAULT_COERCE_BITS: u64 = 128;

/// Depth used by construction-time monotonicity spot checks.
pub const DEFAULT_CHECK_DEPTH: u64 = 64;

impl LeftCEReal {
    /// Fixture with a known limit approached as `limit - gap(n)`.
    pub fn fixture(label: &str, limit: Rational, gap: GapSchedule) -> Result<Self> {
        if gap.gap(0) > limit {
            return Err(Error::Construction(format!(
                "initial stage {} - {} is negative",
                limit,
                gap.gap(0)
            )));
        }
        let real = LeftCEReal {
            label: label.to_string(),
            rule: StageRule::Fixture {
                limit: limit.clone(),
                gap,
            },
            exact_limit: Some(limit),
        };
        real.validate(DEFAULT_CHECK_DEPTH)?;
        Ok(real)
    }

    /// Partial sums of an explicit term enumeration (all terms positive);
    /// the exact limit is the full sum.
    pub fn from_partial_sums(label: &str, terms: Vec<Rational>) -> Result<Self> {
        if terms.iter().any(|t| t.is_negative()) {
            return Err(Error::Construction("negative enumeration term".into()));
        }
        let total: Rational = terms.iter().fold(Rational::zero(), |a, t| a + t);
        Ok(LeftCEReal {
            label: label.to_string(),
            rule: StageRule::PartialSums { terms },
            exact_limit: Some(total),
        })
    }

    /// Stage sequence fixed in advance (used for repetition-encoded
    /// prefixes, where no exact limit is pretended).
    pub fn from_prefix_stages(label: &str, stages: Vec<Rational>) -> Result<Self> {
        if stages.is_empty() {
            return Err(Error::Construction("empty stage list".into()));
        }
        if stages.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Construction("prefix stages decrease".into()));
        }
        Ok(LeftCEReal {
            label: label.to_string(),
            rule: StageRule::RepetitionPrefixes { stages },
            exact_limit: None,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn exact_limit(&self) -> Option<&Rational> {
        self.exact_limit.as_ref()
    }

    /// Requires fixture mode.
    pub fn limit_or_err(&self) -> Result<&Rational> {
        self.exact_limit
            .as_ref()
            .ok_or_else(|| Error::InvalidInput(format!("{} has no exact limit", self.label)))
    }

    /// Stage value at index `n`; total and deterministic.
    pub fn stage(&self, n: u64) -> Rational {
        match &self.rule {
            StageRule::Fixture { limit, gap } => limit - gap.gap(n),
            StageRule::PartialSums { terms } => {
                let upto = (n as usize).min(terms.len());
                terms[..upto].iter().fold(Rational::zero(), |a, t| a + t)
            }
            StageRule::Sum { lhs, rhs } => lhs.stage(n) + rhs.stage(n),
            StageRule::Scale { inner, factor } => inner.stage(n) * factor,
            StageRule::InterleaveLimit { limit, cap } => {
                let k = n.min(*cap);
                let bits = BitString::new((1..=k).map(|i| fraction_bit(limit, i)).collect());
                h1_finite_value(&bits)
            }
            StageRule::InterleaveStages { inner, coerce_bits } => {
                let coerced = truncate_dyadic(&inner.stage(n), *coerce_bits);
                let bits = BitString::terminating(&coerced)
                    .expect("coerced stage is dyadic in [0,1) by construction");
                h1_finite_value(&bits)
            }
            StageRule::RepetitionPrefixes { stages } => {
                let idx = (n as usize).min(stages.len() - 1);
                stages[idx].clone()
            }
        }
    }

    /// Declared bound on `limit - stage(n)` when one is derivable.
    pub fn convergence_bound(&self, n: u64) -> Option<Rational> {
        match &self.rule {
            StageRule::Fixture { gap, .. } => Some(gap.gap(n)),
            StageRule::PartialSums { terms } => {
                let from = (n as usize).min(terms.len());
                Some(terms[from..].iter().fold(Rational::zero(), |a, t| a + t))
            }
            StageRule::Sum { lhs, rhs } => {
                Some(lhs.convergence_bound(n)? + rhs.convergence_bound(n)?)
            }
            StageRule::Scale { inner, factor } => Some(inner.convergence_bound(n)? * factor),
            // Tail of Σ (bit_i + 1)·4^{-i} past min(n, cap) bits.
            StageRule::InterleaveLimit { cap, .. } => {
                let k = n.min(*cap);
                Some(ratio(2, 3) * pow_nat(&ratio(1, 4), k.min(u32::MAX as u64) as u32))
            }
            StageRule::InterleaveStages { .. } => None,
            StageRule::RepetitionPrefixes { .. } => None,
        }
    }

    /// Pointwise sum; the exact limit survives when both inputs carry one.
    pub fn add(&self, other: &LeftCEReal) -> LeftCEReal {
        let exact_limit = match (&self.exact_limit, &other.exact_limit) {
            (Some(a), Some(b)) => Some(a + b),
            _ => None,
        };
        LeftCEReal {
            label: format!("{}+{}", self.label, other.label),
            rule: StageRule::Sum {
                lhs: Box::new(self.clone()),
                rhs: Box::new(other.clone()),
            },
            exact_limit,
        }
    }

    /// Pointwise scaling by a positive rational.
    pub fn scale(&self, factor: &Rational) -> Result<LeftCEReal> {
        if !factor.is_positive() {
            return Err(Error::InvalidInput(format!(
                "scale factor {} not positive",
                factor
            )));
        }
        Ok(LeftCEReal {
            label: format!("{}*{}", factor, self.label),
            rule: StageRule::Scale {
                inner: Box::new(self.clone()),
                factor: factor.clone(),
            },
            exact_limit: self.exact_limit.as_ref().map(|l| l * factor),
        })
    }

    /// Bit-interleaving transform: expansion bits `aᵢ` are mapped to
    /// `Σ (aᵢ+1)·4^{-i}` (a 0 bit becomes the pair "01", a 1 bit "10").
    ///
    /// With an exact limit the transform is limit-driven: stage `n`
    /// interleaves the first `min(n, coerce_bits)` bits of the limit's
    /// terminating-form expansion, converging to the interleaved limit
    /// with tail bound `(2/3)·4^{-n}`. (Transforming the inner stages
    /// pointwise would not do: a sequence crossing an expansion boundary —
    /// say dyadic 1/2 approached through 0.0111⋯1 — has stage
    /// interleavings converging below the interleaved limit.)
    ///
    /// Without an exact limit the stages are interleaved pointwise after
    /// truncation to `coerce_bits` fractional bits, and no limit is
    /// claimed for the result.
    pub fn interleave_transform(&self, coerce_bits: u64) -> Result<LeftCEReal> {
        let s0 = self.stage(0);
        if s0.is_negative() {
            return Err(Error::Domain(format!("stage {} outside [0,1)", s0)));
        }
        let real = match &self.exact_limit {
            Some(l) => {
                if l >= &Rational::one() {
                    return Err(Error::Domain(format!("limit {} outside [0,1)", l)));
                }
                LeftCEReal {
                    label: format!("h1({})", self.label),
                    rule: StageRule::InterleaveLimit {
                        limit: l.clone(),
                        cap: coerce_bits,
                    },
                    exact_limit: Some(h1_limit_value(l)?),
                }
            }
            None => {
                // No limit to lean on: spot-check the stage range instead.
                for n in 0..DEFAULT_CHECK_DEPTH {
                    let s = self.stage(n);
                    if s < Rational::zero() || s >= Rational::one() {
                        return Err(Error::Domain(format!("stage {} outside [0,1)", s)));
                    }
                }
                LeftCEReal {
                    label: format!("h1({})", self.label),
                    rule: StageRule::InterleaveStages {
                        inner: Box::new(self.clone()),
                        coerce_bits,
                    },
                    exact_limit: None,
                }
            }
        };
        real.validate(DEFAULT_CHECK_DEPTH)?;
        Ok(real)
    }

    /// Spot-checks stage monotonicity, the limit as an upper bound, and the
    /// declared convergence bound, up to `depth`.
    pub fn validate(&self, depth: u64) -> Result<()> {
        let mut prev: Option<Rational> = None;
        for n in 0..=depth {
            let s = self.stage(n);
            if let Some(p) = &prev {
                if &s < p {
                    return Err(Error::Construction(format!(
                        "{}: stage({}) = {} decreases below {}",
                        self.label, n, s, p
                    )));
                }
            }
            if let Some(limit) = &self.exact_limit {
                if &s > limit {
                    return Err(Error::Construction(format!(
                        "{}: stage({}) = {} exceeds limit {}",
                        self.label, n, s, limit
                    )));
                }
                if let Some(bound) = self.convergence_bound(n) {
                    if limit - &s > bound {
                        return Err(Error::Construction(format!(
                            "{}: limit - stage({}) exceeds declared bound {}",
                            self.label, n, bound
                        )));
                    }
                }
            }
            prev = Some(s);
        }
        Ok(())
    }

    /// Dyadic approximation family of the exact limit (fixture mode only).
    pub fn name(&self) -> Result<RealName> {
        Ok(RealName {
            value: self.limit_or_err()?.clone(),
        })
    }
}

/// `Σ (bᵢ+1)·4^{-i}` over a finite bit string: the stage-level interleaving
/// value (a 0 bit contributes the pair "01", a 1 bit the pair "10").
pub fn h1_finite_value(bits: &BitString) -> Rational {
    let quarter = ratio(1, 4);
    let mut acc = Rational::zero();
    let mut scale = Rational::one();
    for b in bits.iter() {
        scale *= &quarter;
        let coeff = if b { 2 } else { 1 };
        acc += &scale * Rational::from_integer(BigInt::from(coeff));
    }
    acc
}

/// Exact value of the fully interleaved expansion of a rational in [0,1):
/// `1/3 + Σ bitᵢ·4^{-i}`, with the bit series summed in closed form from
/// the eventually periodic expansion.
pub fn h1_limit_value(x: &Rational) -> Result<Rational> {
    let (pre, per) = periodic_expansion(x)?;
    let series = crate::bits::periodic_series(&pre, &per, 4);
    Ok(ratio(1, 3) + series)
}

/// A name of a real `x`: for each precision `n`, an integer `z` with
/// `|x - z/2^n| ≤ 2^{-n}`. Built here from exactly known fixture limits
/// with ties rounded downward.
#[derive(Clone, Debug)]
pub struct RealName {
    value: Rational,
}

impl RealName {
    pub fn from_exact(value: Rational) -> Self {
        RealName { value }
    }

    pub fn exact_value(&self) -> &Rational {
        &self.value
    }

    /// The integer `z` at precision `n`.
    pub fn approx(&self, n: u64) -> BigInt {
        round_half_down(&(&self.value * two_pow(n as i64)))
    }

    /// `z/2^n` as a rational.
    pub fn level(&self, n: u64) -> Rational {
        Rational::from_integer(self.approx(n)) * two_pow(-(n as i64))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    pub(crate) fn half() -> LeftCEReal {
        LeftCEReal::fixture(
            "HALF",
            ratio(1, 2),
            GapSchedule::new(int(1), ratio(1, 2), 2).unwrap(),
        )
        .unwrap()
    }

    pub(crate) fn third() -> LeftCEReal {
        LeftCEReal::fixture(
            "THIRD",
            ratio(1, 3),
            GapSchedule::new(ratio(1, 3), ratio(1, 4), 0).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn fixture_stages_match_schedule() {
        let h = half();
        assert_eq!(h.stage(0), ratio(1, 4));
        assert_eq!(h.stage(1), ratio(3, 8));
        assert_eq!(h.stage(2), ratio(7, 16));
        let t = third();
        assert_eq!(t.stage(0), int(0));
        assert_eq!(t.stage(1), ratio(1, 4));
        assert!(t.stage(10) < ratio(1, 3));
    }

    #[test]
    fn non_monotone_schedule_is_rejected() {
        // base >= 1 would make the gap grow.
        assert!(GapSchedule::new(int(1), int(1), 0).is_err());
        assert!(GapSchedule::new(int(0), ratio(1, 2), 0).is_err());
        // gap(0) larger than the limit puts stage 0 below zero; fixtures in
        // (0,1) reject that.
        assert!(LeftCEReal::fixture(
            "bad",
            ratio(1, 4),
            GapSchedule::new(int(1), ratio(1, 2), 0).unwrap()
        )
        .is_err());
    }

    #[test]
    fn sum_and_scale_commute_with_limits() {
        let h = half();
        let t = third();
        let s = h.add(&t);
        assert_eq!(s.exact_limit().unwrap(), &ratio(5, 6));
        assert_eq!(s.stage(1), ratio(3, 8) + ratio(1, 4));
        let sc = h.scale(&ratio(1, 2)).unwrap();
        assert_eq!(sc.exact_limit().unwrap(), &ratio(1, 4));
        let id = h.scale(&int(1)).unwrap();
        assert_eq!(id.stage(3), h.stage(3));
        let tripled = third().scale(&int(3)).unwrap();
        assert_eq!(tripled.exact_limit().unwrap(), &int(1));
        assert!(h.scale(&int(0)).is_err());
    }

    #[test]
    fn interleave_limits() {
        let h1h = half().interleave_transform(DEFAULT_COERCE_BITS).unwrap();
        assert_eq!(h1h.exact_limit().unwrap(), &ratio(7, 12));
        // 0 bit -> coefficient 1, 1 bit -> coefficient 2.
        let one_bit = h1_finite_value(&"1".parse().unwrap());
        assert_eq!(one_bit, ratio(1, 2));
        let zero_bit = h1_finite_value(&"0".parse().unwrap());
        assert_eq!(zero_bit, ratio(1, 4));
        // 3/4 interleaves to 31/48.
        assert_eq!(h1_limit_value(&ratio(3, 4)).unwrap(), ratio(31, 48));
        // 5/7 = 0.(101): per-period bit sum 4^-1 + 4^-3 = 17/64, so the
        // series is (17/64)/(1 - 4^-3) = 17/63 and the limit 1/3 + 17/63.
        assert_eq!(h1_limit_value(&ratio(5, 7)).unwrap(), ratio(38, 63));
    }

    #[test]
    fn interleave_stages_are_monotone_and_below_limit() {
        let h1h = half().interleave_transform(DEFAULT_COERCE_BITS).unwrap();
        let limit = h1h.exact_limit().unwrap().clone();
        let mut prev = h1h.stage(0);
        for n in 1..64 {
            let s = h1h.stage(n);
            assert!(s >= prev);
            assert!(s < limit);
            prev = s;
        }
        // Convergence toward the exact limit without a declared bound.
        assert!(limit.clone() - h1h.stage(40) < two_pow(-30));
    }

    #[test]
    fn sums_may_leave_the_unit_interval_but_encodings_reject_them() {
        let wide = half().add(&half()).add(&third());
        assert_eq!(wide.exact_limit().unwrap(), &ratio(4, 3));
        assert_eq!(
            wide.stage(2),
            ratio(7, 16) + ratio(7, 16) + (ratio(1, 3) - ratio(1, 48))
        );
        assert!(matches!(
            wide.interleave_transform(DEFAULT_COERCE_BITS),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn interleave_rejects_out_of_range() {
        let too_big = LeftCEReal::fixture(
            "ONE",
            int(1),
            GapSchedule::new(ratio(1, 2), ratio(1, 2), 0).unwrap(),
        )
        .unwrap();
        assert!(too_big.interleave_transform(64).is_err());
    }

    #[test]
    fn names_satisfy_the_defining_inequality() {
        let name = half().name().unwrap();
        assert_eq!(name.approx(3), BigInt::from(4));
        let name = third().name().unwrap();
        assert_eq!(name.approx(2), BigInt::from(1));
        let h1h = half().interleave_transform(DEFAULT_COERCE_BITS).unwrap();
        let name = h1h.name().unwrap();
        assert_eq!(name.approx(4), BigInt::from(9));
        for n in 0..32 {
            let err = (name.exact_value() - name.level(n)).abs();
            assert!(err <= two_pow(-(n as i64)));
        }
    }

    #[test]
    fn name_requires_fixture() {
        let pat = LeftCEReal::from_prefix_stages("pat", vec![int(0), ratio(1, 2)]).unwrap();
        assert!(pat.name().is_err());
    }

    #[test]
    fn partial_sums_plateau() {
        let m = LeftCEReal::from_partial_sums("toy", vec![ratio(1, 2), ratio(1, 4)]).unwrap();
        assert_eq!(m.stage(0), int(0));
        assert_eq!(m.stage(1), ratio(1, 2));
        assert_eq!(m.stage(2), ratio(3, 4));
        assert_eq!(m.stage(99), ratio(3, 4));
        assert_eq!(m.exact_limit().unwrap(), &ratio(3, 4));
        assert_eq!(m.convergence_bound(1).unwrap(), ratio(1, 4));
    }
}
