//! Piecewise curves and the witness/continuity translations.
//!
//! From a reduction witness one direction builds nondecreasing computable
//! curves: a polyline whose breakpoints are chosen through cone-shaped
//! regions (slope strictly below `d` for `ℓ = 1`, the `ℓ`-th-root cone in
//! general), and a smoothed curve that replaces each polyline segment with
//! a translated root arc `g_n(x) = A_n - d(t_n - x)^{1/ℓ}`. The other
//! direction extracts a reduction witness back out of a certified curve
//! evaluator by upper-approximating curve values with terminating binary
//! expansions and searching a left cut.
//!
//! All certification is exact or enclosure-based; an undecided comparison
//! is reported, never guessed.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::{root_enclosure, RationalInterval, REFINE_CAP};
use crate::rational::{decimal_string, pow_nat, rational_string, two_pow, Rational};
use crate::real::LeftCEReal;
use crate::witness::{Eval, QSWitness};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

/// Segment shape between two consecutive breakpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)] // a curve holds few segments
pub enum Segment {
    Linear,
    Constant,
    /// `g(x) = A - d(t - x)^{1/ℓ}` with `t` and `A` carried as certified
    /// enclosures (exact points in perfect-power cases).
    Power {
        d: u64,
        ell: u32,
        t: RationalInterval,
        a: RationalInterval,
    },
}

/// Nondecreasing piecewise curve: constant `head` on `(-∞, x₀]`, then one
/// segment per consecutive breakpoint pair. Defined up to the last
/// breakpoint.
#[derive(Clone, Debug, PartialEq)]
pub struct PiecewiseCurve {
    points: Vec<(Rational, Rational)>,
    segments: Vec<Segment>,
    provenance: String,
}

impl PiecewiseCurve {
    /// Polyline through the given breakpoints (strictly increasing x,
    /// nondecreasing y).
    pub fn polyline(points: Vec<(Rational, Rational)>, provenance: &str) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Construction(
                "a curve needs at least one breakpoint".into(),
            ));
        }
        for w in points.windows(2) {
            if w[0].0 >= w[1].0 {
                return Err(Error::Construction(format!(
                    "breakpoint abscissae not strictly increasing: {} then {}",
                    w[0].0, w[1].0
                )));
            }
            if w[0].1 > w[1].1 {
                return Err(Error::Construction(format!(
                    "breakpoint values decrease: {} then {}",
                    w[0].1, w[1].1
                )));
            }
        }
        let segments = vec![Segment::Linear; points.len() - 1];
        Ok(PiecewiseCurve {
            points,
            segments,
            provenance: provenance.to_string(),
        })
    }

    fn with_segments(
        points: Vec<(Rational, Rational)>,
        segments: Vec<Segment>,
        provenance: &str,
    ) -> Self {
        PiecewiseCurve {
            points,
            segments,
            provenance: provenance.to_string(),
        }
    }

    pub fn breakpoints(&self) -> &[(Rational, Rational)] {
        &self.points
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    /// Constant value on the head region `(-∞, x₀]`.
    pub fn head_value(&self) -> &Rational {
        &self.points[0].1
    }

    pub fn first_x(&self) -> &Rational {
        &self.points[0].0
    }

    pub fn last_x(&self) -> &Rational {
        &self.points[self.points.len() - 1].0
    }

    /// Certified enclosure of the curve value, of width at most `eps`.
    /// Exact on head, linear and constant pieces at rational `x`.
    pub fn eval(&self, x: &Rational, eps: &Rational) -> Result<RationalInterval> {
        if !eps.is_positive() {
            return Err(Error::InvalidInput(
                "evaluation width must be positive".into(),
            ));
        }
        if x <= self.first_x() {
            return Ok(RationalInterval::point(self.head_value().clone()));
        }
        if x > self.last_x() {
            return Err(Error::Domain(format!(
                "{} is beyond the last breakpoint {}",
                x,
                self.last_x()
            )));
        }
        let i = self.points.partition_point(|p| &p.0 < x);
        let (x0, y0) = &self.points[i - 1];
        let (x1, y1) = &self.points[i];
        match &self.segments[i - 1] {
            Segment::Constant => Ok(RationalInterval::point(y0.clone())),
            Segment::Linear => {
                let y = y0 + (y1 - y0) * (x - x0) / (x1 - x0);
                Ok(RationalInterval::point(y))
            }
            Segment::Power { d, ell, t, a } => eval_power_segment(*d, *ell, t, a, x, eps),
        }
    }

    /// CSV plot sample `(x, y_lo, y_hi)` over a uniform grid, decimal
    /// columns for external plotting.
    pub fn sample_csv(&self, samples: u32, eps: &Rational) -> Result<String> {
        let mut out = String::from("x,y_lo,y_hi\n");
        let x0 = self.first_x().clone();
        let span = self.last_x() - &x0;
        let n = samples.max(1);
        for j in 0..=n {
            let x = &x0 + &span * Rational::new(BigInt::from(j), BigInt::from(n));
            let v = self.eval(&x, eps)?;
            out.push_str(&format!(
                "{},{},{}\n",
                decimal_string(&x, 12),
                decimal_string(&v.lo, 12),
                decimal_string(&v.hi, 12)
            ));
        }
        Ok(out)
    }
}

fn eval_power_segment(
    d: u64,
    ell: u32,
    t: &RationalInterval,
    a: &RationalInterval,
    x: &Rational,
    eps: &Rational,
) -> Result<RationalInterval> {
    let df = Rational::from_integer(BigInt::from(d));
    let zero = Rational::zero();
    let lo_in = (&t.lo - x).max(zero.clone());
    let hi_in = (&t.hi - x).max(zero);
    let mut root_eps = eps / Rational::from_integer(BigInt::from(4u64.saturating_mul(d.max(1))));
    for _ in 0..REFINE_CAP {
        let r_lo = root_enclosure(&lo_in, ell, &root_eps)?;
        let r_hi = root_enclosure(&hi_in, ell, &root_eps)?;
        let out_lo = &a.lo - &df * &r_hi.hi;
        let out_hi = &a.hi - &df * &r_lo.lo;
        if &out_hi - &out_lo <= *eps {
            return RationalInterval::new(out_lo, out_hi);
        }
        root_eps /= Rational::from_integer(BigInt::from(2));
    }
    Err(Error::InsufficientPrecision(
        "stored segment enclosures are wider than the requested width; rebuild the curve with smaller widths".into(),
    ))
}

/// Cone region anchored at `(w, z)`: `-d^{1/ℓ}(w-x)^{1/ℓ} + z ≤ y ≤ z`
/// (`ℓ = 1` is the straight-sided case). Membership is decided exactly by
/// comparing `ℓ`-th powers, which is itself a sound certificate.
#[derive(Clone, Debug)]
pub struct RegionSpec {
    pub anchor_x: Rational,
    pub anchor_y: Rational,
    pub d: u64,
    pub ell: u32,
}

impl RegionSpec {
    fn gap_ok(&self, x: &Rational, y: &Rational, strict: bool) -> bool {
        let diff = &self.anchor_y - y;
        if diff.is_negative() {
            return false;
        }
        let run = &self.anchor_x - x;
        if run.is_negative() {
            return diff.is_zero() && !strict && run.is_zero();
        }
        let lhs = pow_nat(&diff, self.ell);
        let rhs = Rational::from_integer(BigInt::from(self.d)) * run;
        if strict {
            lhs < rhs
        } else {
            lhs <= rhs
        }
    }

    /// Closed-region membership.
    pub fn contains(&self, x: &Rational, y: &Rational) -> bool {
        y <= &self.anchor_y && self.gap_ok(x, y, false)
    }

    /// Interior membership (both inequalities strict).
    pub fn interior(&self, x: &Rational, y: &Rational) -> bool {
        y < &self.anchor_y && self.gap_ok(x, y, true)
    }

    /// The builder's acceptance test: closed at the top (`y ≤ z`, so stage
    /// ties are admitted — on rational fixtures the witness value can sit
    /// exactly at α), strict on the cone side (which is what makes every
    /// produced slope strictly less than `d`).
    pub fn admits(&self, x: &Rational, y: &Rational) -> bool {
        y <= &self.anchor_y && self.gap_ok(x, y, true)
    }
}

fn defined(e: Eval, what: &str) -> Result<Rational> {
    match e {
        Eval::Defined(v) => Ok(v),
        Eval::Undefined(m) => Err(Error::Construction(format!("{} undefined: {}", what, m))),
    }
}

/// Shared breakpoint search: starting from `Q₀ = (b₀, f(b₀))`, repeatedly
/// take the least later stage whose anchored region admits every point so
/// far.
fn build_region_curve(
    alpha: &LeftCEReal,
    beta: &LeftCEReal,
    w: &QSWitness,
    steps: u64,
    depth_cap: u64,
    provenance: &str,
) -> Result<PiecewiseCurve> {
    let limits = match (alpha.exact_limit(), beta.exact_limit()) {
        (Some(a), Some(b)) => Some((a.clone(), b.clone())),
        _ => None,
    };
    let validate = |x: &Rational, y: &Rational| -> Result<()> {
        if let Some((a, b)) = &limits {
            let lhs = pow_nat(&(a - y), w.ell);
            let rhs = Rational::from_integer(BigInt::from(w.d)) * (b - x);
            if y > a || lhs >= rhs {
                return Err(Error::Construction(format!(
                    "witness inequality fails at breakpoint ({}, {}): {} !< {}",
                    x, y, lhs, rhs
                )));
            }
        }
        Ok(())
    };

    let b0 = beta.stage(0);
    let y0 = defined(w.f.evaluate(&b0), "f(b_0)")?;
    validate(&b0, &y0)?;
    let mut points = vec![(b0, y0)];
    let mut last_idx: u64 = 0;
    for _ in 0..steps {
        let mut n = last_idx + 1;
        loop {
            if n > depth_cap {
                return Err(Error::InsufficientDepth(format!(
                    "no admissible stage after index {} within depth {}",
                    last_idx, depth_cap
                )));
            }
            let bx = beta.stage(n);
            if bx <= points.last().expect("nonempty").0 {
                n += 1;
                continue;
            }
            let by = defined(w.f.evaluate(&bx), "f(b_n)")?;
            let region = RegionSpec {
                anchor_x: bx.clone(),
                anchor_y: by.clone(),
                d: w.d,
                ell: w.ell,
            };
            if points.iter().all(|(px, py)| region.admits(px, py)) {
                validate(&bx, &by)?;
                points.push((bx, by));
                last_idx = n;
                break;
            }
            n += 1;
        }
    }
    PiecewiseCurve::polyline(points, provenance)
}

/// Polyline for a Solovay witness (`ℓ = 1`): every segment slope is
/// strictly below `d`, values are cofinal in the limit.
pub fn build_lipschitz(
    alpha: &LeftCEReal,
    beta: &LeftCEReal,
    w: &QSWitness,
    steps: u64,
    depth_cap: u64,
) -> Result<PiecewiseCurve> {
    if w.ell != 1 {
        return Err(Error::InvalidInput(format!(
            "lipschitz construction needs ell = 1, got {}",
            w.ell
        )));
    }
    build_region_curve(alpha, beta, w, steps, depth_cap, "lipschitz-polyline")
}

/// Polyline for a quasi-Solovay witness: breakpoints admitted through the
/// `ℓ`-th-root cone, anchored at every later breakpoint.
pub fn build_hoelder_polyline(
    alpha: &LeftCEReal,
    beta: &LeftCEReal,
    w: &QSWitness,
    steps: u64,
    depth_cap: u64,
) -> Result<PiecewiseCurve> {
    build_region_curve(alpha, beta, w, steps, depth_cap, "hoelder-polyline")
}

/// Sign of `d((x-r₀)^{1/ℓ} - (x-r₁)^{1/ℓ}) - Δh` at a rational point,
/// decided exactly in perfect-power cases and by refining enclosures
/// otherwise.
fn crossover_residual_sign(
    x: &Rational,
    r0: &Rational,
    r1: &Rational,
    d: u64,
    ell: u32,
    dh: &Rational,
) -> Result<Ordering> {
    let df = Rational::from_integer(BigInt::from(d));
    let u = x - r0;
    let v = x - r1;
    let mut eps = (&u - &v) / Rational::from_integer(BigInt::from(4));
    if !eps.is_positive() {
        eps = Rational::one();
    }
    for _ in 0..REFINE_CAP {
        let iu = root_enclosure(&u, ell, &eps)?;
        let iv = root_enclosure(&v, ell, &eps)?;
        if iu.is_point() && iv.is_point() {
            let exact = &df * (&iu.lo - &iv.lo);
            return Ok(exact.cmp(dh));
        }
        let lo = &df * (&iu.lo - &iv.hi) - dh;
        let hi = &df * (&iu.hi - &iv.lo) - dh;
        if lo.is_positive() {
            return Ok(Ordering::Greater);
        }
        if hi.is_negative() {
            return Ok(Ordering::Less);
        }
        eps /= Rational::from_integer(BigInt::from(2));
    }
    Err(Error::Undecided(REFINE_CAP))
}

/// Solves `d(x-r₀)^{1/ℓ} - d(x-r₁)^{1/ℓ} = Δh` for the unique `x > r₁`
/// (the residual is strictly decreasing and positive at `r₁`): bracket by
/// doubling, then bisect to width `eps_t`, returning an exact point when a
/// midpoint hits the root in a perfect-power configuration.
fn solve_crossover(
    r0: &Rational,
    r1: &Rational,
    d: u64,
    ell: u32,
    dh: &Rational,
    eps_t: &Rational,
) -> Result<RationalInterval> {
    let delta = r1 - r0;
    let mut offset = delta.clone();
    let mut hi = r1 + &offset;
    let mut doublings = 0u32;
    loop {
        match crossover_residual_sign(&hi, r0, r1, d, ell, dh)? {
            Ordering::Greater => {
                if doublings >= REFINE_CAP {
                    return Err(Error::Construction(
                        "no sign flip within the doubling cap".into(),
                    ));
                }
                offset *= Rational::from_integer(BigInt::from(2));
                hi = r1 + &offset;
                doublings += 1;
            }
            Ordering::Equal => return Ok(RationalInterval::point(hi)),
            Ordering::Less => break,
        }
    }
    let mut lo = r1.clone();
    while &(&hi - &lo) > eps_t {
        let mid = (&lo + &hi) / Rational::from_integer(BigInt::from(2));
        match crossover_residual_sign(&mid, r0, r1, d, ell, dh)? {
            Ordering::Greater => lo = mid,
            Ordering::Less => hi = mid,
            Ordering::Equal => return Ok(RationalInterval::point(mid)),
        }
    }
    RationalInterval::new(lo, hi)
}

/// Replaces every rising segment of a polyline by the root arc through its
/// endpoints: on `[rₙ, rₙ₊₁]` the arc is `gₙ(x) = Aₙ - d(tₙ - x)^{1/ℓ}`
/// where `tₙ > rₙ₊₁` solves the equal-height crossover equation and
/// `Aₙ = h(rₙ₊₁) + d(tₙ - rₙ₊₁)^{1/ℓ}`. Flat segments become constants.
/// Endpoint agreement is verified: the stored enclosures must contain the
/// polyline values at both ends.
pub fn smooth_hoelder(
    h: &PiecewiseCurve,
    d: u64,
    ell: u32,
    eps_t: &Rational,
) -> Result<PiecewiseCurve> {
    if ell < 2 {
        return Err(Error::InvalidInput("smoothing needs ell >= 2".into()));
    }
    if !eps_t.is_positive() {
        return Err(Error::InvalidInput("eps_t must be positive".into()));
    }
    if h.segments
        .iter()
        .any(|s| matches!(s, Segment::Power { .. }))
    {
        return Err(Error::InvalidInput("smoothing expects a polyline".into()));
    }
    let df = Rational::from_integer(BigInt::from(d));
    let d_pow = pow_nat(&df, ell);
    let mut segments = Vec::with_capacity(h.segments.len());
    for win in h.points.windows(2) {
        let (r0, y0) = &win[0];
        let (r1, y1) = &win[1];
        let dh = y1 - y0;
        if dh.is_zero() {
            segments.push(Segment::Constant);
            continue;
        }
        // Root existence needs Δh < d·(Δr)^{1/ℓ}, i.e. Δh^ℓ < d^ℓ·Δr.
        if pow_nat(&dh, ell) >= &d_pow * (r1 - r0) {
            return Err(Error::Construction(format!(
                "segment [{}, {}] rises too fast for the claimed constants",
                r0, r1
            )));
        }
        let t = solve_crossover(r0, r1, d, ell, &dh, eps_t)?;
        let rise = RationalInterval::new((&t.lo - r1).max(Rational::zero()), &t.hi - r1)?;
        let root_lo = root_enclosure(&rise.lo, ell, eps_t)?;
        let root_hi = root_enclosure(&rise.hi, ell, eps_t)?;
        let a = RationalInterval::new(y1 + &df * root_lo.lo, y1 + &df * root_hi.hi)?;
        let seg = Segment::Power {
            d,
            ell,
            t: t.clone(),
            a: a.clone(),
        };
        // Endpoint agreement: the arc enclosure must contain the polyline
        // value at both ends of the interval. Near-vertical arcs (t within
        // eps_t of the right endpoint) cannot reach tight widths, so the
        // requested width backs off before the containment is asserted.
        for (x, y) in [(r0, y0), (r1, y1)] {
            let mut got = None;
            for shift in [-8i64, -4, 0, 4] {
                match eval_power_segment(d, ell, &t, &a, x, &two_pow(shift)) {
                    Ok(i) => {
                        got = Some(i);
                        break;
                    }
                    Err(Error::InsufficientPrecision(_)) => continue,
                    Err(e) => return Err(e),
                }
            }
            let got = got.ok_or_else(|| {
                Error::InsufficientPrecision("arc endpoint enclosure would not converge".into())
            })?;
            if !got.contains(y) {
                return Err(Error::Construction(format!(
                    "smoothed arc misses endpoint ({}, {}): enclosure [{}, {}]",
                    x, y, got.lo, got.hi
                )));
            }
        }
        segments.push(seg);
    }
    Ok(PiecewiseCurve::with_segments(
        h.points.clone(),
        segments,
        &format!("{}+smoothed", h.provenance),
    ))
}

/// Continuity claims checkable pair-by-pair.
#[derive(Clone, Debug)]
pub enum ModulusClaim {
    /// `|g(x₂) - g(x₁)| ≤ L·|x₂ - x₁|`.
    Lipschitz { l: Rational },
    /// `g(x₂) - g(x₁) < 3^{1-s}·d·(x₂-x₁)^s` with `s = 1/ℓ`, compared on
    /// `ℓ`-th powers where both sides are rational.
    Hoelder { d: u64, ell: u32 },
    /// `g(r) - g(x) ≤ L·(r - x)` with `r` restricted to breakpoints.
    AnchoredLipschitz { l: Rational },
    /// `(g(r) - g(x))^ℓ ≤ d·(r - x)` with `r` restricted to breakpoints.
    AnchoredHoelder { d: u64, ell: u32 },
}

impl ModulusClaim {
    pub fn describe(&self) -> String {
        match self {
            ModulusClaim::Lipschitz { l } => format!("lipschitz({})", l),
            ModulusClaim::Hoelder { d, ell } => {
                format!("hoelder(3^(1-1/{ell})*{d}, s=1/{ell})")
            }
            ModulusClaim::AnchoredLipschitz { l } => format!("anchored-lipschitz({})", l),
            ModulusClaim::AnchoredHoelder { d, ell } => {
                format!("anchored-hoelder(d={d}, l={ell})")
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PairVerdict {
    Holds,
    Fails,
    Undecided,
}

#[derive(Clone, Debug, Serialize)]
pub struct PairRecord {
    #[serde(with = "rational_string")]
    pub x1: Rational,
    #[serde(with = "rational_string")]
    pub x2: Rational,
    pub verdict: PairVerdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct ModulusReport {
    pub claim: String,
    pub records: Vec<PairRecord>,
    pub holds: bool,
    pub undecided: usize,
}

/// Certifies a continuity claim on a list of pairs. Polyline claims decide
/// exactly; claims over root arcs refine enclosures and report `undecided`
/// at the cap instead of passing silently.
pub fn certify_modulus(
    c: &PiecewiseCurve,
    pairs: &[(Rational, Rational)],
    claim: &ModulusClaim,
) -> Result<ModulusReport> {
    let mut records = Vec::with_capacity(pairs.len());
    for (p1, p2) in pairs {
        let (x1, x2) = if p1 <= p2 { (p1, p2) } else { (p2, p1) };
        if x1 == x2 {
            return Err(Error::InvalidInput("modulus pairs must be distinct".into()));
        }
        let verdict = certify_pair(c, x1, x2, claim)?;
        records.push(PairRecord {
            x1: x1.clone(),
            x2: x2.clone(),
            verdict,
        });
    }
    let holds = records.iter().all(|r| r.verdict == PairVerdict::Holds);
    let undecided = records
        .iter()
        .filter(|r| r.verdict == PairVerdict::Undecided)
        .count();
    Ok(ModulusReport {
        claim: claim.describe(),
        records,
        holds,
        undecided,
    })
}

fn breakpoint_value(c: &PiecewiseCurve, x: &Rational) -> Result<Rational> {
    c.points
        .iter()
        .find(|(px, _)| px == x)
        .map(|(_, py)| py.clone())
        .ok_or_else(|| {
            Error::InvalidInput(format!(
                "anchored claims need x2 at a breakpoint, got {}",
                x
            ))
        })
}

fn certify_pair(
    c: &PiecewiseCurve,
    x1: &Rational,
    x2: &Rational,
    claim: &ModulusClaim,
) -> Result<PairVerdict> {
    let run = x2 - x1;
    // Coarse to fine: most pairs decide at wide enclosures, and a pair
    // that keeps straddling its bound down to the stored-enclosure
    // precision wall is reported undecided, never guessed.
    let mut eps = Rational::one();
    for _ in 0..REFINE_CAP {
        let step = certify_pair_at(c, x1, x2, &run, claim, &eps);
        let decided = match step {
            Ok(d) => d,
            Err(Error::InsufficientPrecision(_)) => return Ok(PairVerdict::Undecided),
            Err(e) => return Err(e),
        };
        if let Some(v) = decided {
            return Ok(v);
        }
        eps /= Rational::from_integer(BigInt::from(2));
    }
    Ok(PairVerdict::Undecided)
}

fn certify_pair_at(
    c: &PiecewiseCurve,
    x1: &Rational,
    x2: &Rational,
    run: &Rational,
    claim: &ModulusClaim,
    eps: &Rational,
) -> Result<Option<PairVerdict>> {
    {
        let decided = match claim {
            ModulusClaim::Lipschitz { l } => {
                let i1 = c.eval(x1, eps)?;
                let i2 = c.eval(x2, eps)?;
                let dg = i2.sub(&i1);
                let bound = l * run;
                if dg.hi <= bound && -&dg.lo <= bound {
                    Some(PairVerdict::Holds)
                } else if dg.lo > bound || dg.hi < -&bound {
                    Some(PairVerdict::Fails)
                } else {
                    None
                }
            }
            ModulusClaim::Hoelder { d, ell } => {
                let i1 = c.eval(x1, eps)?;
                let i2 = c.eval(x2, eps)?;
                let dg = i2.sub(&i1);
                // Δg < 3^{1-s}·d·run^s  ⟺  Δg^ℓ < 3^{ℓ-1}·d^ℓ·run.
                let bound_pow = pow_nat(&Rational::from_integer(BigInt::from(3)), ell - 1)
                    * pow_nat(&Rational::from_integer(BigInt::from(*d)), *ell)
                    * run;
                if !dg.hi.is_positive() || pow_nat(&dg.hi, *ell) < bound_pow {
                    Some(PairVerdict::Holds)
                } else if dg.lo.is_positive() && pow_nat(&dg.lo, *ell) >= bound_pow {
                    Some(PairVerdict::Fails)
                } else {
                    None
                }
            }
            ModulusClaim::AnchoredLipschitz { l } => {
                let y2 = breakpoint_value(c, x2)?;
                let i1 = c.eval(x1, eps)?;
                let bound = l * run;
                let diff_hi = &y2 - &i1.lo;
                let diff_lo = &y2 - &i1.hi;
                if diff_hi <= bound {
                    Some(PairVerdict::Holds)
                } else if diff_lo > bound {
                    Some(PairVerdict::Fails)
                } else {
                    None
                }
            }
            ModulusClaim::AnchoredHoelder { d, ell } => {
                let y2 = breakpoint_value(c, x2)?;
                let i1 = c.eval(x1, eps)?;
                let bound = Rational::from_integer(BigInt::from(*d)) * run;
                let diff_hi = &y2 - &i1.lo;
                let diff_lo = &y2 - &i1.hi;
                if !diff_hi.is_positive() || pow_nat(&diff_hi, *ell) <= bound {
                    Some(PairVerdict::Holds)
                } else if diff_lo.is_positive() && pow_nat(&diff_lo, *ell) > bound {
                    Some(PairVerdict::Fails)
                } else {
                    None
                }
            }
        };
        Ok(decided)
    }
}

/// A decidable stand-in for the left cut of a real: either the exact
/// fixture limit (membership is `c < α`) or a finite enumeration prefix
/// (any listed element at or above `c` certifies membership).
#[derive(Clone, Debug)]
pub enum LeftCut {
    Exact(Rational),
    Enumerated(Vec<Rational>),
}

impl LeftCut {
    pub fn contains(&self, c: &Rational) -> bool {
        match self {
            LeftCut::Exact(alpha) => c < alpha,
            LeftCut::Enumerated(listed) => listed.iter().any(|r| r >= c),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Extraction {
    /// The returned rational `g(q)`.
    #[serde(with = "rational_string")]
    pub value: Rational,
    /// Index of the first upper approximant found in the cut.
    pub approximant_index: u64,
}

/// `floor(v · 2^n)` for the curve value `v` at `q`, by refining the
/// evaluation until the floor is unambiguous. Stalls (a dyadic value seen
/// only through inexact enclosures) are an error.
fn value_floor_bits(c: &PiecewiseCurve, q: &Rational, n: u64) -> Result<BigInt> {
    let mut eps = two_pow(-(n as i64 + 2));
    for _ in 0..REFINE_CAP {
        let i = c.eval(q, &eps)?;
        let lo_f = (&i.lo * two_pow(n as i64)).floor().to_integer();
        if i.is_point() {
            return Ok(lo_f);
        }
        let hi_f = (&i.hi * two_pow(n as i64)).floor().to_integer();
        if lo_f == hi_f {
            return Ok(lo_f);
        }
        eps /= Rational::from_integer(BigInt::from(2));
    }
    Err(Error::Domain(
        "digit extraction stalled on a dyadic value; adjust the fixture".into(),
    ))
}

/// Extracts a witness value at `q` from a certified curve evaluator and a
/// left cut: binary digits of `f(q)` are refined on demand, each upper
/// approximant `cₙ = 0.s₁⋯s_{k-1}1` (the first zero digit at or past `n`
/// flipped to one, tail dropped) is tested against the cut, and the first
/// member is returned. Converges whenever `f(q)` lies strictly below the
/// cut's real.
pub fn extract_witness(
    c: &PiecewiseCurve,
    cut: &LeftCut,
    q: &Rational,
    approximant_budget: u64,
) -> Result<Extraction> {
    for n in 1..=approximant_budget {
        let mut k = n;
        let candidate = loop {
            if k > n + approximant_budget {
                return Err(Error::Budget(format!(
                    "no zero digit between {} and {}",
                    n,
                    n + approximant_budget
                )));
            }
            let fl = value_floor_bits(c, q, k)?;
            if fl.is_even() {
                // c = 0.s₁⋯s_{k-1}1 = (floor(v·2^k) + 1) / 2^k.
                break Rational::new(fl + BigInt::one(), BigInt::one() << k as usize);
            }
            k += 1;
        };
        if cut.contains(&candidate) {
            return Ok(Extraction {
                value: candidate,
                approximant_index: n,
            });
        }
    }
    Err(Error::Budget(format!(
        "no upper approximant entered the cut within {} rounds",
        approximant_budget
    )))
}

// --- serialization -------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct PointDto {
    x: String,
    y: String,
}

#[derive(Serialize, Deserialize)]
struct SegmentDto {
    kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    s: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    d: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    t: Option<RationalInterval>,
    #[serde(rename = "A", skip_serializing_if = "Option::is_none")]
    a: Option<RationalInterval>,
}

#[derive(Serialize, Deserialize)]
struct CurveDto {
    head: String,
    breakpoints: Vec<PointDto>,
    segments: Vec<SegmentDto>,
    provenance: String,
}

impl Serialize for PiecewiseCurve {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let dto = CurveDto {
            head: crate::rational::format_rational(self.head_value()),
            breakpoints: self
                .points
                .iter()
                .map(|(x, y)| PointDto {
                    x: crate::rational::format_rational(x),
                    y: crate::rational::format_rational(y),
                })
                .collect(),
            segments: self
                .segments
                .iter()
                .map(|s| match s {
                    Segment::Linear => SegmentDto {
                        kind: "linear".into(),
                        s: None,
                        d: None,
                        t: None,
                        a: None,
                    },
                    Segment::Constant => SegmentDto {
                        kind: "constant".into(),
                        s: None,
                        d: None,
                        t: None,
                        a: None,
                    },
                    Segment::Power { d, ell, t, a } => SegmentDto {
                        kind: "power".into(),
                        s: Some(format!("1/{}", ell)),
                        d: Some(*d),
                        t: Some(t.clone()),
                        a: Some(a.clone()),
                    },
                })
                .collect(),
            provenance: self.provenance.clone(),
        };
        dto.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for PiecewiseCurve {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as DeError;
        let dto = CurveDto::deserialize(de)?;
        let mut points = Vec::with_capacity(dto.breakpoints.len());
        for p in &dto.breakpoints {
            let x = crate::rational::parse_rational(&p.x).map_err(DeError::custom)?;
            let y = crate::rational::parse_rational(&p.y).map_err(DeError::custom)?;
            points.push((x, y));
        }
        let mut segments = Vec::with_capacity(dto.segments.len());
        for s in dto.segments {
            let seg = match s.kind.as_str() {
                "linear" => Segment::Linear,
                "constant" => Segment::Constant,
                "power" => {
                    let ell =
                        s.s.as_deref()
                            .and_then(|txt| txt.strip_prefix("1/"))
                            .and_then(|den| den.parse::<u32>().ok())
                            .ok_or_else(|| DeError::custom("power segment needs s = \"1/ell\""))?;
                    Segment::Power {
                        d: s.d
                            .ok_or_else(|| DeError::custom("power segment needs d"))?,
                        ell,
                        t: s.t
                            .ok_or_else(|| DeError::custom("power segment needs t"))?,
                        a: s.a
                            .ok_or_else(|| DeError::custom("power segment needs A"))?,
                    }
                }
                other => return Err(DeError::custom(format!("unknown segment kind {}", other))),
            };
            segments.push(seg);
        }
        if points.is_empty() {
            return Err(DeError::custom("curve needs at least one breakpoint"));
        }
        if segments.len() + 1 != points.len() {
            return Err(DeError::custom("segment count must be breakpoints - 1"));
        }
        Ok(PiecewiseCurve::with_segments(
            points,
            segments,
            &dto.provenance,
        ))
    }
}
