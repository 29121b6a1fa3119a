//! The verification battery behind the `suite` subcommand.
//!
//! Each criterion exercises one slice of the library at pinned constants
//! and tolerances, producing a self-diagnosing JSON payload with the exact
//! rational values of every compared side. All comparisons are exact;
//! enclosure widths appear only where a width is part of the statement.

use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use serde_json::{json, Value};

use qsolovay_core::bits::{BitSource, BitString};
use qsolovay_core::curve::{
    build_lipschitz, certify_modulus, extract_witness, smooth_hoelder, LeftCut, ModulusClaim,
    PiecewiseCurve, Segment,
};
use qsolovay_core::files::toy_machine_34;
use qsolovay_core::rational::{
    format_rational, fraction_bit, int, nat, pow_nat, ratio, two_pow, Rational,
};
use qsolovay_core::real::{GapSchedule, LeftCEReal};
use qsolovay_core::witness::{
    check_witness, compose, h1_witness, index_function, join, ml_bound_dominated, ml_test_level,
    reflexive_witness, scale_witness, turing_via_qs, witness_from_sequences, CheckStatus,
    QSWitness, WitnessFunction,
};
use qsolovay_core::{RationalInterval, Sampler};

use crate::config::RunConfig;

pub struct CriterionOutcome {
    pub id: u32,
    pub name: &'static str,
    pub holds: bool,
    pub elapsed_ms: u128,
    pub details: Value,
}

pub const CRITERIA: [(u32, &str); 11] = [
    (1, "reflexive witness over the standard fixtures"),
    (2, "interleaving gadget on HALF vs H1HALF"),
    (3, "close pair values share prefixes (exhaustive)"),
    (4, "sequence characterization cycle"),
    (5, "witness algebra constants and chains"),
    (6, "lipschitz polylines: slope, monotonicity, cofinality"),
    (7, "hoelder smoothing worked example and modulus"),
    (8, "roundtrip extraction on HALF"),
    (9, "interval-cover measure bounds"),
    (10, "toy machine halting probabilities and tower"),
    (11, "names through a quasi-Solovay witness"),
];

pub fn run_criterion(id: u32, cfg: &RunConfig) -> Result<CriterionOutcome> {
    let name = CRITERIA
        .iter()
        .find(|(cid, _)| *cid == id)
        .map(|(_, n)| *n)
        .ok_or_else(|| anyhow!("no criterion {}", id))?;
    let start = Instant::now();
    let (holds, details) = match id {
        1 => criterion_reflexive(cfg)?,
        2 => criterion_h1_gadget(cfg)?,
        3 => criterion_prefix_agreement(cfg)?,
        4 => criterion_sequence_cycle(cfg)?,
        5 => criterion_algebra(cfg)?,
        6 => criterion_lipschitz(cfg)?,
        7 => criterion_smoothing(cfg)?,
        8 => criterion_extraction(cfg)?,
        9 => criterion_ml_bounds(cfg)?,
        10 => criterion_toy_machine(cfg)?,
        11 => criterion_turing_names(cfg)?,
        _ => unreachable!(),
    };
    Ok(CriterionOutcome {
        id,
        name,
        holds,
        elapsed_ms: start.elapsed().as_millis(),
        details,
    })
}

pub fn run_all(cfg: &RunConfig) -> Result<Vec<CriterionOutcome>> {
    CRITERIA
        .iter()
        .map(|(id, _)| run_criterion(*id, cfg))
        .collect()
}

fn criterion_reflexive(cfg: &RunConfig) -> Result<(bool, Value)> {
    let fixtures = cfg.fixtures()?;
    let w = reflexive_witness();
    let mut sampler = Sampler::new(cfg.seed);
    let mut per_fixture = Vec::new();
    let mut all = true;
    for label in ["HALF", "THIRD", "H1HALF", "OMEGA34", "H1OMEGA"] {
        let fx = fixtures.get(label).context("standard fixture missing")?;
        let beta = fx.limit_or_err()?.clone();
        let qs = sampler.grid(&int(0), &beta, 50);
        let report = check_witness(fx, fx, &w, &qs)?;
        all &= report.verdict;
        per_fixture.push(json!({
            "fixture": label,
            "samples": qs.len(),
            "verdict": report.verdict,
        }));
    }
    Ok((all, json!({ "d": 2, "l": 1, "fixtures": per_fixture })))
}

fn criterion_h1_gadget(cfg: &RunConfig) -> Result<(bool, Value)> {
    let fixtures = cfg.fixtures()?;
    let alpha = &fixtures["HALF"];
    let beta = &fixtures["H1HALF"];
    let w = h1_witness(alpha, cfg.bit_depth)?;
    if (w.d, w.ell) != (1, 4) {
        bail!("interleaving witness constants drifted");
    }
    let beta_limit = beta.limit_or_err()?.clone();
    let lo = &beta_limit - two_pow(-5);
    let mut sampler = Sampler::new(cfg.seed);
    let mut qs = sampler.grid(&lo, &beta_limit, 100);
    qs.push(ratio(9, 16));
    let report = check_witness(alpha, beta, &w, &qs)?;
    let worked = report
        .records
        .last()
        .ok_or_else(|| anyhow!("empty report"))?;
    let worked_ok = worked.lhs.as_ref() == Some(&int(0)) && worked.rhs == ratio(1, 48);
    let holds = report.verdict && worked_ok;
    Ok((
        holds,
        json!({
            "d": 1, "l": 4,
            "valid_from": format_rational(&lo),
            "samples": qs.len(),
            "worked_point": {
                "q": "9/16",
                "lhs": worked.lhs.as_ref().map(format_rational),
                "rhs": format_rational(&worked.rhs),
                "margin_ok": worked_ok,
            },
            "verdict": report.verdict,
        }),
    ))
}

fn pattern_fixtures(depth: u64) -> Vec<BitSource> {
    let period: BitString = "01".parse().expect("bits");
    vec![
        BitSource::from_pattern(BitString::empty(), Some(period.clone()), depth),
        BitSource::from_pattern("10".parse().expect("bits"), Some(period.clone()), depth),
        BitSource::from_pattern("1010".parse().expect("bits"), Some(period), depth),
    ]
}

fn criterion_prefix_agreement(_cfg: &RunConfig) -> Result<(bool, Value)> {
    let mut qs = Vec::new();
    for k in 1..=7u32 {
        for mask in 0u64..(1u64 << k) {
            let mut bits = Vec::with_capacity(2 * k as usize);
            for i in 0..k {
                let one_first = (mask >> i) & 1 == 1;
                bits.push(one_first);
                bits.push(!one_first);
            }
            qs.push(BitString::new(bits).value());
        }
    }
    let mut counterexamples = 0u64;
    let mut checked = 0u64;
    for beta_src in pattern_fixtures(256) {
        let beta = beta_src.exact_value().expect("periodic pattern");
        for q in &qs {
            if q >= &beta {
                continue;
            }
            for m in 0..=5u64 {
                if &beta - q <= two_pow(-(2 * m as i64 + 1)) {
                    checked += 1;
                    for i in 1..=2 * m {
                        if fraction_bit(q, i) != fraction_bit(&beta, i) {
                            counterexamples += 1;
                        }
                    }
                }
            }
        }
    }
    Ok((
        counterexamples == 0 && checked > 0,
        json!({
            "pair_values": qs.len(),
            "patterns": 3,
            "max_m": 5,
            "close_instances_checked": checked,
            "counterexamples": counterexamples,
        }),
    ))
}

fn criterion_sequence_cycle(cfg: &RunConfig) -> Result<(bool, Value)> {
    let fixtures = cfg.fixtures()?;
    let depth = 32u64;
    let mut all = true;
    let mut per_fixture = Vec::new();
    for label in ["HALF", "THIRD", "H1HALF", "OMEGA34", "H1OMEGA"] {
        let fx = fixtures.get(label).context("standard fixture missing")?;
        let w = reflexive_witness();
        let g = index_function(&w, fx, fx, depth, 4096)?;
        let increasing = g.windows(2).all(|w| w[0] < w[1]);
        let a: Vec<Rational> = g.iter().map(|&s| fx.stage(s)).collect();
        let b: Vec<Rational> = (0..depth).map(|n| fx.stage(n)).collect();
        let rebuilt = witness_from_sequences(a, b, w.d, w.ell)?;
        let beta = fx.limit_or_err()?;
        let mut qs: Vec<Rational> = (0..depth - 1).map(|n| fx.stage(n)).collect();
        qs.dedup();
        qs.retain(|q| q < beta);
        let report = check_witness(fx, fx, &rebuilt, &qs)?;
        all &= increasing && report.verdict;
        per_fixture.push(json!({
            "fixture": label,
            "g_increasing": increasing,
            "g_first": g.first(),
            "g_last": g.last(),
            "check_points": qs.len(),
            "verdict": report.verdict,
        }));
    }
    Ok((all, json!({ "depth": depth, "fixtures": per_fixture })))
}

fn criterion_algebra(cfg: &RunConfig) -> Result<(bool, Value)> {
    let fixtures = cfg.fixtures()?;
    let half = &fixtures["HALF"];
    let third = &fixtures["THIRD"];

    // Composition constants and a fixture chain HALF <= HALF <= HALF.
    let w1 = QSWitness::new(WitnessFunction::identity(), 2, 1)?;
    let w2 = QSWitness::new(WitnessFunction::identity(), 3, 2)?;
    let composed = compose(&w1, &w2)?;
    let compose_ok = (composed.d, composed.ell) == (12, 2);
    let qs: Vec<Rational> = (0..10).map(|n| half.stage(n)).collect();
    let compose_check = check_witness(half, half, &composed, &qs)?.verdict;

    // Join constants and the chain HALF + THIRD <= 5/6.
    let gamma = LeftCEReal::fixture(
        "FIVESIXTHS",
        ratio(5, 6),
        GapSchedule::new(ratio(1, 3), ratio(1, 4), 0)?,
    )?;
    let w0 = QSWitness::new(
        WitnessFunction::Affine {
            slope: ratio(1, 2),
            intercept: ratio(1, 12),
        },
        1,
        1,
    )?;
    let w1j = QSWitness::new(
        WitnessFunction::Affine {
            slope: ratio(1, 2),
            intercept: ratio(-1, 12),
        },
        1,
        2,
    )?;
    let joined = join(&w0, &w1j)?;
    let join_ok = (joined.d, joined.ell) == (4, 2);
    let sum = half.add(third);
    let gqs: Vec<Rational> = (0..10).map(|n| gamma.stage(n)).collect();
    let join_check = check_witness(&sum, &gamma, &joined, &gqs)?.verdict;

    // Scaling: (1/2)*HALF <= HALF via the scaled reflexive witness.
    let scaled = scale_witness(&reflexive_witness(), &ratio(1, 2))?;
    let quarter = half.scale(&ratio(1, 2))?;
    let scale_check = check_witness(&quarter, half, &scaled, &qs)?.verdict;

    let holds = compose_ok && compose_check && join_ok && join_check && scale_check;
    Ok((
        holds,
        json!({
            "compose": { "constants": [composed.d, composed.ell], "expected": [12, 2], "chain_check": compose_check },
            "join": { "constants": [joined.d, joined.ell], "expected": [4, 2], "chain_check": join_check },
            "scale": { "constants": [scaled.d, scaled.ell], "chain_check": scale_check },
        }),
    ))
}

fn affine(slope: Rational, intercept: Rational, d: u64, ell: u32) -> Result<QSWitness> {
    Ok(QSWitness::new(
        WitnessFunction::Affine { slope, intercept },
        d,
        ell,
    )?)
}

fn slopes_below(curve: &PiecewiseCurve, d: u64) -> bool {
    curve
        .breakpoints()
        .windows(2)
        .all(|w| &w[1].1 - &w[0].1 < nat(d) * (&w[1].0 - &w[0].0))
}

fn cofinal_within_bound(
    curve: &PiecewiseCurve,
    alpha: &Rational,
    beta: &Rational,
    d: u64,
    ell: u32,
) -> bool {
    curve
        .breakpoints()
        .iter()
        .all(|(x, y)| y <= alpha && pow_nat(&(alpha - y), ell) < nat(d) * (beta - x))
}

fn criterion_lipschitz(cfg: &RunConfig) -> Result<(bool, Value)> {
    let fixtures = cfg.fixtures()?;
    let half = &fixtures["HALF"];
    let third = &fixtures["THIRD"];
    let two_thirds = LeftCEReal::fixture(
        "TWOTHIRDS",
        ratio(2, 3),
        GapSchedule::new(ratio(1, 3), ratio(1, 4), 0)?,
    )?;
    let quarter = half.scale(&ratio(1, 2))?;

    let cases: Vec<(&str, &LeftCEReal, &LeftCEReal, QSWitness)> = vec![
        ("identity on HALF", half, half, reflexive_witness()),
        (
            "affine on THIRD vs 2/3",
            third,
            &two_thirds,
            affine(int(1), ratio(-1, 3), 2, 1)?,
        ),
        (
            "scaled reflexive on (1/2)*HALF vs HALF",
            &quarter,
            half,
            scale_witness(&reflexive_witness(), &ratio(1, 2))?,
        ),
    ];
    let mut all = true;
    let mut out = Vec::new();
    for (label, alpha, beta, w) in cases {
        let curve = build_lipschitz(alpha, beta, &w, 50, 4096)?;
        let nondecreasing = curve
            .breakpoints()
            .windows(2)
            .all(|p| p[0].1 <= p[1].1 && p[0].0 < p[1].0);
        let slope_ok = slopes_below(&curve, w.d);
        let cofinal = cofinal_within_bound(
            &curve,
            alpha.limit_or_err()?,
            beta.limit_or_err()?,
            w.d,
            w.ell,
        );
        all &= nondecreasing && slope_ok && cofinal;
        out.push(json!({
            "case": label,
            "steps": 50,
            "d": w.d,
            "nondecreasing": nondecreasing,
            "slopes_strictly_below_d": slope_ok,
            "cofinal_within_witness_bound": cofinal,
        }));
    }
    Ok((all, json!({ "cases": out })))
}

fn criterion_smoothing(cfg: &RunConfig) -> Result<(bool, Value)> {
    let poly = PiecewiseCurve::polyline(vec![(int(0), int(0)), (int(1), ratio(1, 2))], "worked")?;
    let smooth = smooth_hoelder(&poly, 1, 2, &cfg.eps_t()?)?;
    let (t, a) = match &smooth.segments()[0] {
        Segment::Power { t, a, .. } => (t.clone(), a.clone()),
        other => bail!("expected a power segment, got {:?}", other),
    };
    let t_ok = t.contains(&ratio(25, 16)) && t.width() <= two_pow(-20);
    let v0 = smooth.eval(&int(0), &cfg.eps_eval()?)?;
    let v1 = smooth.eval(&int(1), &cfg.eps_eval()?)?;
    let endpoints_exact =
        v0 == RationalInterval::point(int(0)) && v1 == RationalInterval::point(ratio(1, 2));
    let mut sampler = Sampler::new(cfg.seed);
    let pairs = sampler.pairs(&int(0), &int(1), 200);
    let report = certify_modulus(&smooth, &pairs, &ModulusClaim::Hoelder { d: 1, ell: 2 })?;
    let holds = t_ok && endpoints_exact && report.holds && report.undecided == 0;
    Ok((
        holds,
        json!({
            "t": { "lo": format_rational(&t.lo), "hi": format_rational(&t.hi) },
            "A": { "lo": format_rational(&a.lo), "hi": format_rational(&a.hi) },
            "t_contains_25_16": t_ok,
            "endpoints_exact": endpoints_exact,
            "pairs": pairs.len(),
            "modulus_holds": report.holds,
            "undecided": report.undecided,
        }),
    ))
}

fn criterion_extraction(cfg: &RunConfig) -> Result<(bool, Value)> {
    let fixtures = cfg.fixtures()?;
    let half = &fixtures["HALF"];
    let w = reflexive_witness();
    let curve = build_lipschitz(half, half, &w, 50, 4096)?;
    let cut = LeftCut::Exact(ratio(1, 2));
    let mut sampler = Sampler::new(cfg.seed);
    let hi = curve.last_x().clone();
    let mut all = true;
    let mut records = Vec::new();
    for _ in 0..20 {
        let q = sampler.in_open(&int(0), &hi);
        let got = extract_witness(&curve, &cut, &q, 64)?;
        let err = ratio(1, 2) - &got.value;
        let bound = int(2) * (ratio(1, 2) - &q);
        let ok = err >= int(0) && err <= bound;
        all &= ok;
        records.push(json!({
            "q": format_rational(&q),
            "g_q": format_rational(&got.value),
            "error": format_rational(&err),
            "bound": format_rational(&bound),
            "holds": ok,
        }));
    }
    Ok((all, json!({ "L": 2, "samples": 20, "records": records })))
}

fn criterion_ml_bounds(_cfg: &RunConfig) -> Result<(bool, Value)> {
    let f = WitnessFunction::identity();
    let mut all = true;
    let mut levels = Vec::new();
    for m in 1..=12u32 {
        let lvl = ml_test_level(&f, m, 1, 2, &two_pow(-20))?;
        all &= lvl.holds;
        levels.push(json!({
            "m": m,
            "defined": lvl.defined_count,
            "total_pow": format_rational(&lvl.total_pow),
            "bound_pow": format_rational(&lvl.bound_pow),
            "holds": lvl.holds,
            "bound_dominated_by_2^-m": ml_bound_dominated(m, 1, 2),
        }));
    }
    let first_dominated = (1..=12u32).find(|&m| ml_bound_dominated(m, 1, 2));
    let threshold_ok = first_dominated == Some(9);
    Ok((
        all && threshold_ok,
        json!({ "k": 1, "l": 2, "levels": levels, "first_dominated_m": first_dominated }),
    ))
}

fn criterion_toy_machine(_cfg: &RunConfig) -> Result<(bool, Value)> {
    let machine = toy_machine_34();
    let omega1 = machine.omega_t(&int(1))?;
    let omega_half = machine.omega_t(&ratio(1, 2))?;
    let tower1 = machine.omega_tower(1, qsolovay_core::DEFAULT_COERCE_BITS)?;
    let tower_limit = tower1.limit_or_err()?.clone();
    let ok = omega1 == ratio(3, 4) && omega_half == ratio(5, 16) && tower_limit == ratio(31, 48);
    // Empirical shortest-program profile, report only.
    let mut profile = Vec::new();
    for target in ["1", "11", "0"] {
        let bits: BitString = target.parse()?;
        profile.push(json!({
            "target": target,
            "shortest_halting_program": machine.complexity_profile(&bits),
        }));
    }
    Ok((
        ok,
        json!({
            "omega_T1": format_rational(&omega1),
            "omega_T_half": format_rational(&omega_half),
            "tower_1_limit": format_rational(&tower_limit),
            "expected": ["3/4", "5/16", "31/48"],
            "complexity_profile": profile,
        }),
    ))
}

fn criterion_turing_names(cfg: &RunConfig) -> Result<(bool, Value)> {
    let fixtures = cfg.fixtures()?;
    let alpha = &fixtures["HALF"];
    let beta = &fixtures["H1HALF"];
    let w = h1_witness(alpha, cfg.bit_depth)?;
    let beta_name = beta.name()?;
    let alpha_limit = alpha.limit_or_err()?.clone();
    let mut all = true;
    let mut levels = Vec::new();
    for n in 0..=20u64 {
        let z = turing_via_qs(&w, &beta_name, n)?;
        let approx = Rational::from(z.clone()) * two_pow(-(n as i64));
        let err = if alpha_limit >= approx {
            &alpha_limit - &approx
        } else {
            &approx - &alpha_limit
        };
        let ok = err <= two_pow(-(n as i64));
        all &= ok;
        levels.push(json!({
            "n": n,
            "z": z.to_string(),
            "error": format_rational(&err),
            "bound": format_rational(&two_pow(-(n as i64))),
            "holds": ok,
        }));
    }
    Ok((
        all,
        json!({ "witness": "h1 on HALF vs H1HALF", "levels": levels }),
    ))
}

/// One (status, verdict) pair per record — used by witness-check reports.
pub fn status_counts(statuses: &[CheckStatus]) -> Value {
    let mut holds = 0;
    let mut fails = 0;
    let mut undefined = 0;
    let mut out_of_range = 0;
    for s in statuses {
        match s {
            CheckStatus::Holds => holds += 1,
            CheckStatus::Fails => fails += 1,
            CheckStatus::Undefined => undefined += 1,
            CheckStatus::OutOfRange => out_of_range += 1,
        }
    }
    json!({ "holds": holds, "fails": fails, "undefined": undefined, "out_of_range": out_of_range })
}
