//! Acceptance battery: every criterion at its pinned constants and
//! tolerances, one pass/fail line each (visible with `--nocapture`).
//!
//! Criteria 1-11 run through the same code path as the `suite`
//! subcommand; criterion 12 runs the built binary twice and compares the
//! report bytes. All inequality checks are exact; enclosure widths appear
//! only where a width is part of the stated criterion.

use std::process::Command;
use std::time::{Duration, Instant};

use qsolovay_cli::config::RunConfig;
use qsolovay_cli::suite::run_criterion;

fn check(id: u32, deadline: Option<Duration>) {
    let cfg = RunConfig::default();
    let start = Instant::now();
    let outcome = run_criterion(id, &cfg).expect("criterion must run to a verdict");
    let elapsed = start.elapsed();
    let line = format!(
        "{} criterion {:>2}: {} ({} ms)",
        if outcome.holds { "PASS" } else { "FAIL" },
        outcome.id,
        outcome.name,
        elapsed.as_millis()
    );
    println!("{}", line);
    assert!(outcome.holds, "{}\ndetails: {}", line, outcome.details);
    if let Some(limit) = deadline {
        assert!(
            elapsed <= limit,
            "criterion {} exceeded its time bound: {:?} > {:?}",
            id,
            elapsed,
            limit
        );
    }
}

/// Reflexive witness (d=2, l=1) over the standard fixtures at 50 seeded
/// rationals each, exact, under a second.
#[test]
fn criterion_01_reflexive_witness() {
    check(1, Some(Duration::from_secs(1)));
}

/// Interleaving gadget on HALF vs H1HALF: d=1, l=4 at 100 seeded q in
/// (beta - 2^-5, beta), including the worked point q = 9/16 with margin
/// exactly 1/48.
#[test]
fn criterion_02_h1_gadget() {
    check(2, None);
    // The worked margin, asserted directly against the library.
    use qsolovay_core::rational::{int, ratio};
    use qsolovay_core::witness::{check_witness, h1_witness};
    let fixtures = RunConfig::default().fixtures().unwrap();
    let w = h1_witness(&fixtures["HALF"], 4096).unwrap();
    let report =
        check_witness(&fixtures["HALF"], &fixtures["H1HALF"], &w, &[ratio(9, 16)]).unwrap();
    assert_eq!(report.records[0].lhs.as_ref().unwrap(), &int(0));
    assert_eq!(report.records[0].rhs, ratio(1, 48));
}

/// Exhaustive: pair-set members with k <= 7 against 3 pattern reals,
/// m <= 5; distance below 2^-(2m+1) forces 2m-bit agreement; zero
/// counterexamples within ten seconds.
#[test]
fn criterion_03_prefix_agreement() {
    check(3, Some(Duration::from_secs(10)));
}

/// Witness -> index function -> rebuilt step witness -> exact check, on
/// all standard fixtures at depth 32.
#[test]
fn criterion_04_sequence_cycle() {
    check(4, None);
}

/// Algebra constants: compose((2,1),(3,2)) = (12,2),
/// join(c0=c1=1, l0=1, l1=2) = (4,2); both outputs pass the checker on
/// fixture chains.
#[test]
fn criterion_05_witness_algebra() {
    check(5, None);
    use qsolovay_core::witness::{compose, join, QSWitness, WitnessFunction};
    let w1 = QSWitness::new(WitnessFunction::identity(), 2, 1).unwrap();
    let w2 = QSWitness::new(WitnessFunction::identity(), 3, 2).unwrap();
    let c = compose(&w1, &w2).unwrap();
    assert_eq!((c.d, c.ell), (12, 2));
    let a = QSWitness::new(WitnessFunction::identity(), 1, 1).unwrap();
    let b = QSWitness::new(WitnessFunction::identity(), 1, 2).unwrap();
    let j = join(&a, &b).unwrap();
    assert_eq!((j.d, j.ell), (4, 2));
}

/// Lipschitz polylines on three fixture reductions at 50 steps: every
/// slope strictly below d, nondecreasing, breakpoint values within the
/// witness bound of alpha; under five seconds.
#[test]
fn criterion_06_lipschitz_polylines() {
    check(6, Some(Duration::from_secs(5)));
}

/// Smoothing worked example (d=1, l=2, rise 1/2 on [0,1]): crossover
/// enclosure contains 25/16 at width <= 2^-20, endpoints 0 and 1/2 exact,
/// and the 3^(1-s) d modulus claim holds on 200 seeded pairs with no
/// undecided verdicts.
#[test]
fn criterion_07_smoothing_worked_example() {
    check(7, None);
    use qsolovay_core::curve::{smooth_hoelder, PiecewiseCurve, Segment};
    use qsolovay_core::rational::{int, ratio, two_pow};
    let poly =
        PiecewiseCurve::polyline(vec![(int(0), int(0)), (int(1), ratio(1, 2))], "worked").unwrap();
    let smooth = smooth_hoelder(&poly, 1, 2, &two_pow(-24)).unwrap();
    match &smooth.segments()[0] {
        Segment::Power { t, a, .. } => {
            assert!(t.contains(&ratio(25, 16)) && t.width() <= two_pow(-20));
            assert!(a.contains(&ratio(5, 4)));
        }
        other => panic!("expected a power segment, got {:?}", other),
    }
}

/// Roundtrip: build the identity polyline on HALF (d=2), extract at 20
/// seeded q; |alpha - g(q)| <= 2|beta - q| exactly.
#[test]
fn criterion_08_roundtrip_extraction() {
    check(8, None);
}

/// Interval-cover levels for k=1, l=2: the measure bound holds for
/// m = 1..12 via exact fourth-power comparison, m = 9 is the first level
/// whose bound drops below 2^-m; under a second.
#[test]
fn criterion_09_ml_measure_bounds() {
    check(9, Some(Duration::from_secs(1)));
    use qsolovay_core::witness::ml_bound_dominated;
    assert!((1..9).all(|m| !ml_bound_dominated(m, 1, 2)));
    assert!(ml_bound_dominated(9, 1, 2));
}

/// Toy machine: omega at T=1 is 3/4, at T=1/2 is 5/16; the first
/// interleaving tower level has limit 31/48.
#[test]
fn criterion_10_toy_machine_values() {
    check(10, None);
    use qsolovay_core::files::toy_machine_34;
    use qsolovay_core::rational::{int, ratio};
    let m = toy_machine_34();
    assert_eq!(m.omega_t(&int(1)).unwrap(), ratio(3, 4));
    assert_eq!(m.omega_t(&ratio(1, 2)).unwrap(), ratio(5, 16));
    let tower = m
        .omega_tower(1, qsolovay_core::DEFAULT_COERCE_BITS)
        .unwrap();
    assert_eq!(tower.limit_or_err().unwrap(), &ratio(31, 48));
}

/// Names computed through the interleaving witness: |alpha - z/2^n| <=
/// 2^-n for n <= 20, exactly.
#[test]
fn criterion_11_names_through_witness() {
    check(11, None);
}

/// Determinism: two runs of `suite` with the same seed produce
/// byte-identical reports.
#[test]
fn criterion_12_suite_determinism() {
    let bin = env!("CARGO_BIN_EXE_qsolovay");
    let dir_a = tempfile::tempdir().unwrap();
    let dir_b = tempfile::tempdir().unwrap();
    for dir in [&dir_a, &dir_b] {
        let status = Command::new(bin)
            .args(["--seed", "1729", "--out"])
            .arg(dir.path())
            .arg("suite")
            .status()
            .expect("suite run");
        assert!(status.success(), "suite must exit 0");
    }
    let mut names: Vec<_> = std::fs::read_dir(dir_a.path())
        .unwrap()
        .map(|e| e.unwrap().file_name())
        .collect();
    names.sort();
    assert_eq!(names.len(), 12, "eleven criterion reports plus the summary");
    for name in &names {
        let a = std::fs::read(dir_a.path().join(name)).unwrap();
        let b = std::fs::read(dir_b.path().join(name)).unwrap();
        assert_eq!(a, b, "report {:?} differs between identical runs", name);
    }
    println!(
        "PASS criterion 12: byte-identical suite reports ({} files)",
        names.len()
    );
}
