//! Solovay and quasi-Solovay reduction witnesses.
//!
//! A quasi-Solovay witness for `α ≤ β` is a partial function `f` together
//! with naturals `d, ℓ ≥ 1` such that `(α - f(q))^ℓ < d(β - q)` for the
//! rationals `q < β` it claims; `ℓ = 1` is the Solovay case. The checker
//! evaluates both sides of the inequality in exact rational arithmetic, so
//! a "holds" verdict is a proof for that `q`.
//!
//! This module also carries the witness algebra (reflexivity, composition,
//! join, scaling), the sequence characterizations, the bit-interleaving
//! witness, the name computation a witness induces, the repetition-coded
//! real, and the interval-cover test levels built from a witness function.

use serde::Serialize;

use crate::bits::{dprime_round_up, interleave_decode, repetition_encode, BitSource, BitString};
use crate::error::{Error, Result};
use crate::interval::{root_enclosure, RationalInterval, REFINE_CAP};
use crate::rational::{
    ceil_log2, pow_nat, ratio, rational_string, rational_string_opt, round_half_down, two_pow,
    Rational,
};
use crate::real::{LeftCEReal, RealName};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Default evaluation budget for partial functions: evaluation either
/// finishes within this many steps or reports "undefined within budget".
pub const DEFAULT_EVAL_BUDGET: u64 = 1_000_000;

/// Outcome of evaluating a partial function at a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Eval {
    Defined(Rational),
    Undefined(String),
}

impl Eval {
    pub fn defined(&self) -> Option<&Rational> {
        match self {
            Eval::Defined(v) => Some(v),
            Eval::Undefined(_) => None,
        }
    }
}

/// Partial rational-to-rational evaluators; deterministic, with explicit
/// partiality (an evaluation never diverges, it runs out of budget or
/// data).
#[derive(Clone, Debug)]
pub enum WitnessFunction {
    Affine {
        slope: Rational,
        intercept: Rational,
    },
    /// `f(q) = a[n+1]` for the least `n` with `b[n] ≤ q < b[n+1]`;
    /// `f(q) = a[0]` below `b[0]`, undefined past the materialized depth.
    SequenceStep {
        a: Vec<Rational>,
        b: Vec<Rational>,
    },
    /// Round `q` up to the first even-length expansion prefix of `β` and
    /// decode its odd-indexed bits.
    DPrimeDecode {
        beta_bits: BitSource,
    },
    Sum(Box<WitnessFunction>, Box<WitnessFunction>),
    /// `outer ∘ inner`.
    Compose {
        outer: Box<WitnessFunction>,
        inner: Box<WitnessFunction>,
    },
    /// Finite exact-match lookup table.
    Table {
        pairs: Vec<(Rational, Rational)>,
    },
}

impl WitnessFunction {
    pub fn identity() -> Self {
        WitnessFunction::Affine {
            slope: Rational::one(),
            intercept: Rational::zero(),
        }
    }

    pub fn evaluate(&self, q: &Rational) -> Eval {
        let mut budget = DEFAULT_EVAL_BUDGET;
        self.evaluate_with_budget(q, &mut budget)
    }

    pub fn evaluate_with_budget(&self, q: &Rational, budget: &mut u64) -> Eval {
        if *budget == 0 {
            return Eval::Undefined("budget exhausted".into());
        }
        *budget -= 1;
        match self {
            WitnessFunction::Affine { slope, intercept } => Eval::Defined(slope * q + intercept),
            WitnessFunction::SequenceStep { a, b } => {
                if a.is_empty() || b.is_empty() {
                    return Eval::Undefined("empty stage sequence".into());
                }
                if q < &b[0] {
                    return Eval::Defined(a[0].clone());
                }
                for n in 0..b.len() - 1 {
                    if *budget == 0 {
                        return Eval::Undefined("budget exhausted".into());
                    }
                    *budget -= 1;
                    if &b[n] <= q && q < &b[n + 1] {
                        return Eval::Defined(a[n + 1].clone());
                    }
                }
                Eval::Undefined("beyond materialized stage depth".into())
            }
            WitnessFunction::DPrimeDecode { beta_bits } => match dprime_round_up(q, beta_bits) {
                Ok(prefix) => {
                    let decoded =
                        interleave_decode(&prefix).expect("round-up prefixes have even length");
                    Eval::Defined(decoded.value())
                }
                Err(Error::InsufficientPrecision(m)) => Eval::Undefined(m),
                Err(e) => Eval::Undefined(e.to_string()),
            },
            WitnessFunction::Sum(f, g) => {
                match (
                    f.evaluate_with_budget(q, budget),
                    g.evaluate_with_budget(q, budget),
                ) {
                    (Eval::Defined(x), Eval::Defined(y)) => Eval::Defined(x + y),
                    (Eval::Undefined(m), _) | (_, Eval::Undefined(m)) => Eval::Undefined(m),
                }
            }
            WitnessFunction::Compose { outer, inner } => {
                match inner.evaluate_with_budget(q, budget) {
                    Eval::Defined(mid) => outer.evaluate_with_budget(&mid, budget),
                    u => u,
                }
            }
            WitnessFunction::Table { pairs } => pairs
                .iter()
                .find(|(x, _)| x == q)
                .map(|(_, y)| Eval::Defined(y.clone()))
                .unwrap_or_else(|| Eval::Undefined("no table entry".into())),
        }
    }
}

/// Quasi-Solovay witness: `f` with constants `d, ℓ ≥ 1`. `ℓ = 1` marks a
/// Solovay witness. `valid_from` is the lower end of the guaranteed
/// q-range when the construction only proves the inequality near `β`;
/// `unit_proximity` additionally restricts to `β - q < 1` (joins assume
/// it).
#[derive(Clone, Debug)]
pub struct QSWitness {
    pub f: WitnessFunction,
    pub d: u64,
    pub ell: u32,
    pub valid_from: Option<Rational>,
    pub unit_proximity: bool,
}

impl QSWitness {
    pub fn new(f: WitnessFunction, d: u64, ell: u32) -> Result<Self> {
        if d < 1 || ell < 1 {
            return Err(Error::InvalidInput("witness constants must be >= 1".into()));
        }
        Ok(QSWitness {
            f,
            d,
            ell,
            valid_from: None,
            unit_proximity: false,
        })
    }

    pub fn with_valid_from(mut self, lo: Rational) -> Self {
        self.valid_from = Some(lo);
        self
    }

    pub fn is_solovay(&self) -> bool {
        self.ell == 1
    }

    fn in_range(&self, q: &Rational, beta: &Rational) -> bool {
        if let Some(lo) = &self.valid_from {
            if q < lo {
                return false;
            }
        }
        if self.unit_proximity && beta - q >= Rational::one() {
            return false;
        }
        true
    }
}

/// The identity witness with `ℓ = 1, d = 2`: every real reduces to itself.
pub fn reflexive_witness() -> QSWitness {
    QSWitness {
        f: WitnessFunction::identity(),
        d: 2,
        ell: 1,
        valid_from: None,
        unit_proximity: false,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Holds,
    Fails,
    Undefined,
    OutOfRange,
}

/// One exact evaluation of the witness inequality at a sample point. Both
/// sides are embedded so a failure is self-diagnosing.
#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    #[serde(with = "rational_string")]
    pub q: Rational,
    #[serde(with = "rational_string_opt")]
    pub f_q: Option<Rational>,
    /// `(α - f(q))^ℓ`.
    #[serde(with = "rational_string_opt")]
    pub lhs: Option<Rational>,
    /// `d(β - q)`.
    #[serde(with = "rational_string")]
    pub rhs: Rational,
    /// Whether `f(q) < α` strictly; `f(q) = α` still holds (the inequality
    /// degenerates to `0 < rhs`), which occurs on rational fixtures.
    pub strictly_below_alpha: Option<bool>,
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub alpha: String,
    pub beta: String,
    pub d: u64,
    pub ell: u32,
    pub records: Vec<CheckRecord>,
    /// True iff every record holds.
    pub verdict: bool,
}

/// Evaluates the witness inequality at each `q`, exactly. Requires both
/// fixtures to carry exact limits; `q ≥ β` is an input error, `q` outside
/// the witness's guaranteed range is flagged rather than asserted.
pub fn check_witness(
    alpha: &LeftCEReal,
    beta: &LeftCEReal,
    w: &QSWitness,
    qs: &[Rational],
) -> Result<CheckReport> {
    let a = alpha.limit_or_err()?;
    let b = beta.limit_or_err()?;
    let mut records = Vec::with_capacity(qs.len());
    for q in qs {
        if q >= b {
            return Err(Error::InvalidInput(format!(
                "q = {} is not below beta = {}",
                q, b
            )));
        }
        let rhs = Rational::from_integer(BigInt::from(w.d)) * (b - q);
        if !w.in_range(q, b) {
            records.push(CheckRecord {
                q: q.clone(),
                f_q: None,
                lhs: None,
                rhs,
                strictly_below_alpha: None,
                status: CheckStatus::OutOfRange,
                note: Some("below the witness's guaranteed range".into()),
            });
            continue;
        }
        match w.f.evaluate(q) {
            Eval::Defined(fq) => {
                let diff = a - &fq;
                let lhs = pow_nat(&diff, w.ell);
                let strictly = &fq < a;
                let holds = &fq <= a && lhs < rhs;
                records.push(CheckRecord {
                    q: q.clone(),
                    f_q: Some(fq),
                    lhs: Some(lhs),
                    rhs,
                    strictly_below_alpha: Some(strictly),
                    status: if holds {
                        CheckStatus::Holds
                    } else {
                        CheckStatus::Fails
                    },
                    note: None,
                });
            }
            Eval::Undefined(m) => records.push(CheckRecord {
                q: q.clone(),
                f_q: None,
                lhs: None,
                rhs,
                strictly_below_alpha: None,
                status: CheckStatus::Undefined,
                note: Some(m),
            }),
        }
    }
    let verdict = records.iter().all(|r| r.status == CheckStatus::Holds);
    Ok(CheckReport {
        alpha: alpha.label().to_string(),
        beta: beta.label().to_string(),
        d: w.d,
        ell: w.ell,
        records,
        verdict,
    })
}

/// Builds the step-function witness from a stage pair: `f(q) = a_{n+1}`
/// where `n` is least with `b_n ≤ q < b_{n+1}` (and `a_0` below `b_0`).
/// The caller vouches that `(α - a_n)^ℓ ≤ d(β - b_n)` on the fixtures.
pub fn witness_from_sequences(
    a: Vec<Rational>,
    b: Vec<Rational>,
    d: u64,
    ell: u32,
) -> Result<QSWitness> {
    if a.is_empty() || a.len() != b.len() {
        return Err(Error::InvalidInput(format!(
            "stage sequences must be nonempty and of equal length, got {} and {}",
            a.len(),
            b.len()
        )));
    }
    for seq in [&a, &b] {
        if seq.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidInput("stage sequence decreases".into()));
        }
    }
    QSWitness::new(WitnessFunction::SequenceStep { a, b }, d, ell)
}

/// [`witness_from_sequences`] over the first `depth + 1` stages of two
/// fixtures.
pub fn witness_from_stage_pair(
    alpha: &LeftCEReal,
    beta: &LeftCEReal,
    d: u64,
    ell: u32,
    depth: u64,
) -> Result<QSWitness> {
    let a: Vec<Rational> = (0..=depth).map(|n| alpha.stage(n)).collect();
    let b: Vec<Rational> = (0..=depth).map(|n| beta.stage(n)).collect();
    witness_from_sequences(a, b, d, ell)
}

/// The index function of the sequence characterization: a strictly
/// increasing `g` with `f(b_n) < a_{g(n)}`, found by least-index search;
/// the resulting pairs are checked exactly against
/// `(α - a_{g(n)})^ℓ ≤ d(β - b_n)`.
///
/// When `f(b_n) ≥ α` no stage can lie strictly above it. That happens only
/// in degenerate fixture situations (a witness value pinned at `α`, or an
/// enumeration that reaches its limit, where `β - b_n = 0` makes the pair
/// inequality demand `a_s = α`); the search then falls back to the least
/// index satisfying the pair inequality itself, which is what the
/// characterization actually needs.
pub fn index_function(
    w: &QSWitness,
    alpha: &LeftCEReal,
    beta: &LeftCEReal,
    depth: u64,
    stage_cap: u64,
) -> Result<Vec<u64>> {
    let alpha_limit = alpha.limit_or_err()?.clone();
    let beta_limit = beta.limit_or_err()?.clone();
    let mut g: Vec<u64> = Vec::with_capacity(depth as usize);
    for n in 0..depth {
        let bn = beta.stage(n);
        let fb = match w.f.evaluate(&bn) {
            Eval::Defined(v) => v,
            Eval::Undefined(m) => {
                return Err(Error::Construction(format!(
                    "f undefined at stage {}: {}",
                    n, m
                )))
            }
        };
        let rhs = Rational::from_integer(BigInt::from(w.d)) * (&beta_limit - &bn);
        let degenerate = fb >= alpha_limit;
        let mut s = g.last().map_or(0, |p| p + 1);
        loop {
            if s > stage_cap {
                return Err(Error::InsufficientDepth(format!(
                    "no stage above f(b_{}) = {} within {} stages",
                    n, fb, stage_cap
                )));
            }
            let a_s = alpha.stage(s);
            let admitted = if degenerate {
                pow_nat(&(&alpha_limit - &a_s), w.ell) <= rhs
            } else {
                a_s > fb
            };
            if admitted {
                break;
            }
            s += 1;
        }
        let lhs = pow_nat(&(&alpha_limit - alpha.stage(s)), w.ell);
        if lhs > rhs {
            return Err(Error::Construction(format!(
                "index pair ({}, {}) violates the sequence inequality: {} > {}",
                s, n, lhs, rhs
            )));
        }
        g.push(s);
    }
    Ok(g)
}

/// Composition: from witnesses for `α ≤ β` (via `f, d₁, ℓ₁`) and `β ≤ γ`
/// (via `g, d₂, ℓ₂`) to a witness for `α ≤ γ` via `f∘g` with constants
/// `(d₁^{ℓ₂}·d₂, ℓ₁ℓ₂)`.
pub fn compose(w1: &QSWitness, w2: &QSWitness) -> Result<QSWitness> {
    let d1 = w1.d as u128;
    let d = d1
        .checked_pow(w2.ell)
        .and_then(|p| p.checked_mul(w2.d as u128))
        .and_then(|p| u64::try_from(p).ok())
        .ok_or_else(|| Error::InvalidInput("composed constant overflows".into()))?;
    let ell = w1
        .ell
        .checked_mul(w2.ell)
        .ok_or_else(|| Error::InvalidInput("composed exponent overflows".into()))?;
    Ok(QSWitness {
        f: WitnessFunction::Compose {
            outer: Box::new(w1.f.clone()),
            inner: Box::new(w2.f.clone()),
        },
        d,
        ell,
        valid_from: w2.valid_from.clone(),
        unit_proximity: w2.unit_proximity,
    })
}

/// Join: from witnesses `α ≤ γ` (via `f₀, c₀, ℓ₀`) and `β ≤ γ` (via
/// `f₁, c₁, ℓ₁`), a witness for `α + β ≤ γ` via `f₀ + f₁`, exponent
/// `max(ℓ₀, ℓ₁)` and constant `ceil((c₀^{1/ℓ} + c₁^{1/ℓ})^{ℓ₁})` where the
/// roots are taken at the smaller exponent. The constant is rounded up
/// through certified enclosures — rounding up can only slacken the bound.
/// The derivation assumes `γ - q < 1`, enforced on the result.
pub fn join(w0: &QSWitness, w1: &QSWitness) -> Result<QSWitness> {
    let (lo, hi) = if w0.ell <= w1.ell { (w0, w1) } else { (w1, w0) };
    let c2 = join_constant(lo.d, lo.ell, hi.d, hi.ell)?;
    let valid_from = match (&w0.valid_from, &w1.valid_from) {
        (Some(a), Some(b)) => Some(a.max(b).clone()),
        (Some(a), None) => Some(a.clone()),
        (None, Some(b)) => Some(b.clone()),
        (None, None) => None,
    };
    Ok(QSWitness {
        f: WitnessFunction::Sum(Box::new(w0.f.clone()), Box::new(w1.f.clone())),
        d: c2,
        ell: hi.ell,
        valid_from,
        unit_proximity: true,
    })
}

/// `ceil((c₀^{1/ℓ₀} + c₁^{1/ℓ₀})^{ℓ₁})`, exact whenever the roots are
/// rational (or the symmetric shortcut applies) and otherwise decided by
/// refining enclosures up to the cap.
fn join_constant(c0: u64, ell0: u32, c1: u64, ell1: u32) -> Result<u64> {
    let r0 = Rational::from_integer(BigInt::from(c0));
    let r1 = Rational::from_integer(BigInt::from(c1));
    if let (Some(a), Some(b)) = (
        crate::interval::exact_root(&r0, ell0),
        crate::interval::exact_root(&r1, ell0),
    ) {
        let s = pow_nat(&(a + b), ell1);
        return ceil_to_u64(&s);
    }
    if c0 == c1 {
        // (2·c^{1/ℓ₀})^{ℓ₁} = 2^{ℓ₁}·(c^{ℓ₁})^{1/ℓ₀}
        let c_pow = pow_nat(&r0, ell1);
        if let Some(root) = crate::interval::exact_root(&c_pow, ell0) {
            let s = pow_nat(&Rational::from_integer(BigInt::from(2)), ell1) * root;
            return ceil_to_u64(&s);
        }
    }
    let mut eps = ratio(1, 2);
    for _ in 0..REFINE_CAP {
        let i0 = root_enclosure(&r0, ell0, &eps)?;
        let i1 = root_enclosure(&r1, ell0, &eps)?;
        let sum = i0.add(&i1).pow(ell1);
        let lo = sum.lo.ceil().to_integer();
        let hi = sum.hi.ceil().to_integer();
        if lo == hi {
            return u64::try_from(hi)
                .map_err(|_| Error::InvalidInput("join constant overflows".into()));
        }
        eps /= Rational::from_integer(BigInt::from(2));
    }
    Err(Error::Undecided(REFINE_CAP))
}

fn ceil_to_u64(q: &Rational) -> Result<u64> {
    u64::try_from(q.ceil().to_integer())
        .map_err(|_| Error::InvalidInput("constant overflows".into()))
}

/// Scaling: from a witness for `α ≤ β` to one for `qα ≤ β` via `x ↦ q·f(x)`
/// with constant `ceil(q^ℓ·d)`.
pub fn scale_witness(w: &QSWitness, q: &Rational) -> Result<QSWitness> {
    if !q.is_positive() {
        return Err(Error::InvalidInput(format!(
            "scale factor {} not positive",
            q
        )));
    }
    let d = ceil_to_u64(&(pow_nat(q, w.ell) * Rational::from_integer(BigInt::from(w.d))))?;
    Ok(QSWitness {
        f: WitnessFunction::Compose {
            outer: Box::new(WitnessFunction::Affine {
                slope: q.clone(),
                intercept: Rational::zero(),
            }),
            inner: Box::new(w.f.clone()),
        },
        d: d.max(1),
        ell: w.ell,
        valid_from: w.valid_from.clone(),
        unit_proximity: w.unit_proximity,
    })
}

/// The interleaving witness for `α ≤ h₁(α)` with constants `d = 1, ℓ = 4`:
/// round `q` up into the complementary-pair set along `β = h₁(α)`'s
/// expansion and decode. Guaranteed only on `(β - 2^{-5}, β)`, which the
/// witness carries as its valid range.
pub fn h1_witness(alpha: &LeftCEReal, bit_depth: u64) -> Result<QSWitness> {
    let a = alpha.limit_or_err()?;
    if a <= &Rational::zero() || a >= &Rational::one() {
        return Err(Error::Domain(format!("limit {} outside (0,1)", a)));
    }
    let beta_limit = crate::real::h1_limit_value(a)?;
    let beta_bits = BitSource::from_rational(beta_limit.clone(), bit_depth)?;
    Ok(QSWitness {
        f: WitnessFunction::DPrimeDecode { beta_bits },
        d: 1,
        ell: 4,
        valid_from: Some(beta_limit - two_pow(-5)),
        unit_proximity: false,
    })
}

/// One level of the name of `α` computed through a witness for `α ≤ β` and
/// a name of `β`: returns `z` with `|α - z/2^n| ≤ 2^{-n}`.
///
/// Protocol: `γ = approx(m)/2^m - 2^{-m}` with `m = ℓn' + 1` is a strict
/// lower bound of `β` with `β - γ ≤ 2^{-ℓn'}`; taking
/// `n' = n + ceil(ceil(log2 d)/ℓ) + 2` makes `α - f(γ) < 2^{-(n+2)}`, and
/// the output is `f(γ)` shifted up by half that budget, rounded at `2^n`.
pub fn turing_via_qs(w: &QSWitness, beta_name: &RealName, n: u64) -> Result<BigInt> {
    let margin = ceil_log2(w.d).div_ceil(w.ell) as u64;
    let n_prime = n + margin + 2;
    let m = (w.ell as u64)
        .checked_mul(n_prime)
        .and_then(|v| v.checked_add(1))
        .ok_or_else(|| Error::InsufficientDepth("name precision overflows".into()))?;
    let gamma = beta_name.level(m) - two_pow(-(m as i64));
    let fg = match w.f.evaluate(&gamma) {
        Eval::Defined(v) => v,
        Eval::Undefined(msg) => {
            return Err(Error::InsufficientDepth(format!(
                "f undefined at gamma: {}",
                msg
            )))
        }
    };
    let shifted = fg + two_pow(-(n as i64 + 3));
    Ok(round_half_down(&(shifted * two_pow(n as i64))))
}

/// Left-c.e. real whose stages are the values of repetition-encoded
/// prefixes of a bit pattern. No exact limit is pretended; accessor
/// exhaustion caps the depth.
pub fn repetition_real(alpha_bits: &BitSource, depth: u64) -> Result<LeftCEReal> {
    let mut m_max: u64 = 0;
    while (m_max + 1) * (m_max + 2) / 2 <= depth {
        m_max += 1;
    }
    m_max = m_max.min(alpha_bits.max_depth());
    let mut stages = vec![Rational::zero()];
    let mut prefix = BitString::empty();
    for i in 1..=m_max {
        match alpha_bits.bit(i) {
            Ok(b) => prefix.push(b),
            Err(_) => break,
        }
        stages.push(repetition_encode(&prefix)?);
    }
    LeftCEReal::from_prefix_stages("repetition", stages)
}

#[derive(Clone, Debug, Serialize)]
pub struct MlInterval {
    pub sigma: String,
    #[serde(with = "rational_string")]
    pub center: Rational,
    /// Endpoints of the shared radius enclosure, repeated per interval for
    /// consumers that read intervals standalone.
    #[serde(with = "rational_string")]
    pub r_lo: Rational,
    #[serde(with = "rational_string")]
    pub r_hi: Rational,
}

/// One level of the interval-cover test: for every σ of length `m` with
/// `f(q(σ))` defined, the open interval around `f(q(σ))` of radius
/// `2^{-(m²-2k)/(2ℓ)}` (enclosed), plus the exact measure-bound verdict.
#[derive(Clone, Debug, Serialize)]
pub struct MlTestLevel {
    pub m: u32,
    pub k: u32,
    pub ell: u32,
    /// Enclosure of the common radius target.
    pub radius: RationalInterval,
    /// Enclosure of the measure bound `2^{m+1} · radius`.
    pub bound: RationalInterval,
    pub intervals: Vec<MlInterval>,
    pub defined_count: u64,
    /// Σ 2·r_hi: numeric upper enclosure of the total length, for the
    /// report only (outward rounding can push it past the exact bound).
    #[serde(with = "rational_string")]
    pub total_upper: Rational,
    /// `(2·count)^{2ℓ} · 2^{-(m²-2k)}`: the exact total, raised to the
    /// 2ℓ-th power where it is rational.
    #[serde(with = "rational_string")]
    pub total_pow: Rational,
    /// `(2^{m+1})^{2ℓ} · 2^{-(m²-2k)}`: the measure bound, same power.
    #[serde(with = "rational_string")]
    pub bound_pow: Rational,
    /// `total_pow ≤ bound_pow`, compared exactly.
    pub holds: bool,
}

/// Builds one test level. Undefined `f(q(σ))` are skipped, matching the
/// cover's definition.
pub fn ml_test_level(
    f: &WitnessFunction,
    m: u32,
    k: u32,
    ell: u32,
    radius_eps: &Rational,
) -> Result<MlTestLevel> {
    if m < 1 {
        return Err(Error::InvalidInput("level index m must be >= 1".into()));
    }
    if m > 24 {
        return Err(Error::InvalidInput(
            "level index m too large to enumerate".into(),
        ));
    }
    let e: i64 = (m as i64) * (m as i64) - 2 * (k as i64);
    let radius = root_enclosure(&two_pow(-e), 2 * ell, radius_eps)?;
    let mut intervals = Vec::new();
    for mask in 0u64..(1u64 << m) {
        let bits: Vec<bool> = (0..m).map(|i| (mask >> (m - 1 - i)) & 1 == 1).collect();
        let sigma = BitString::new(bits);
        let q = repetition_encode(&sigma)?;
        if let Eval::Defined(center) = f.evaluate(&q) {
            intervals.push(MlInterval {
                sigma: sigma.to_string(),
                center,
                r_lo: radius.lo.clone(),
                r_hi: radius.hi.clone(),
            });
        }
    }
    let count = intervals.len() as u64;
    let two = Rational::from_integer(BigInt::from(2));
    let total_upper = &two * &radius.hi * Rational::from_integer(BigInt::from(count));
    let bound = radius.scale(&two_pow(m as i64 + 1));
    let scale = two_pow(-e);
    let total_pow = pow_nat(&(Rational::from_integer(BigInt::from(2 * count))), 2 * ell) * &scale;
    let bound_pow = pow_nat(&two_pow(m as i64 + 1), 2 * ell) * &scale;
    let holds = total_pow <= bound_pow;
    Ok(MlTestLevel {
        m,
        k,
        ell,
        radius,
        bound,
        intervals,
        defined_count: count,
        total_upper,
        total_pow,
        bound_pow,
        holds,
    })
}

/// Whether the level-`m` measure bound `2^{m+1-(m²-2k)/(2ℓ)}` is at most
/// `2^{-m}`, decided by exact exponent comparison.
pub fn ml_bound_dominated(m: u32, k: u32, ell: u32) -> bool {
    // m + 1 - (m² - 2k)/(2ℓ) ≤ -m
    let lhs = Rational::from_integer(BigInt::from(m as i64 + 1))
        - Rational::new(
            BigInt::from((m as i64) * (m as i64) - 2 * (k as i64)),
            BigInt::from(2 * ell as i64),
        );
    lhs <= Rational::from_integer(BigInt::from(-(m as i64)))
}
