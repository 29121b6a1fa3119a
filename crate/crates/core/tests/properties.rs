//! Property tests over the encodings, enclosures and power inequalities.
//!
//! Where an inequality involves irrational powers, the assertion goes
//! through an independent route: raising both sides to the ℓ-th power
//! where that is rational, or comparing enclosure endpoints whose
//! soundness is itself checked by powering back.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use qsolovay_core::bits::{
    dprime_check, interleave_decode, interleave_encode, periodic_expansion, periodic_series,
};
use qsolovay_core::interval::root_enclosure;
use qsolovay_core::rational::{pow_nat, ratio, two_pow, Rational};
use qsolovay_core::real::{h1_limit_value, GapSchedule, LeftCEReal};
use qsolovay_core::BitString;

fn bitstring() -> impl Strategy<Value = BitString> {
    proptest::collection::vec(any::<bool>(), 0..24).prop_map(BitString::new)
}

fn positive_rational(max_den: i64) -> impl Strategy<Value = Rational> {
    (1i64..500, 1i64..max_den).prop_map(|(n, d)| ratio(n, d))
}

proptest! {
    #[test]
    fn interleave_roundtrip(x in bitstring()) {
        let enc = interleave_encode(&x);
        prop_assert_eq!(enc.len(), 2 * x.len());
        prop_assert_eq!(interleave_decode(&enc).unwrap(), x);
    }

    #[test]
    fn interleave_image_is_pair_structured(x in bitstring()) {
        prop_assume!(!x.is_empty());
        let enc = interleave_encode(&x);
        let check = dprime_check(&enc.value()).unwrap();
        prop_assert!(check.member);
        prop_assert_eq!(check.k, Some(x.len()));
    }

    #[test]
    fn root_enclosures_bracket_by_powering(
        x in positive_rational(200),
        ell in 2u32..5,
    ) {
        let eps = two_pow(-16);
        let i = root_enclosure(&x, ell, &eps).unwrap();
        prop_assert!(!i.lo.is_negative());
        prop_assert!(i.width() <= eps);
        prop_assert!(pow_nat(&i.lo, ell) <= x);
        prop_assert!(pow_nat(&i.hi, ell) >= x);
    }

    #[test]
    fn root_respects_order_after_refinement(
        a in positive_rational(100),
        delta in positive_rational(100),
        ell in 2u32..4,
    ) {
        // a < b strictly; their roots must separate once widths shrink
        // below the ℓ-th-power gap allows.
        let b = &a + &delta;
        let mut eps = ratio(1, 4);
        let mut separated = false;
        for _ in 0..64 {
            let ia = root_enclosure(&a, ell, &eps).unwrap();
            let ib = root_enclosure(&b, ell, &eps).unwrap();
            if ia.hi < ib.lo {
                separated = true;
                // Certified: powering the separating endpoints keeps order.
                prop_assert!(pow_nat(&ia.hi, ell) < pow_nat(&ib.lo, ell));
                break;
            }
            eps /= Rational::from_integer(BigInt::from(2));
        }
        prop_assert!(separated);
    }

    #[test]
    fn sub_additivity_of_fractional_powers(
        z in positive_rational(100),
        delta in positive_rational(100),
        ell in 2u32..5,
    ) {
        // For 0 < z < w and s = 1/ℓ: w^s - z^s ≤ (w - z)^s, certified by
        // refining enclosures until the non-strict inequality is witnessed
        // through rational endpoints.
        let w = &z + &delta;
        let mut eps = ratio(1, 8);
        let mut certified = false;
        for _ in 0..80 {
            let iw = root_enclosure(&w, ell, &eps).unwrap();
            let iz = root_enclosure(&z, ell, &eps).unwrap();
            let id = root_enclosure(&delta, ell, &eps).unwrap();
            // upper bound of w^s - z^s vs lower bound of (w-z)^s
            if &iw.hi - &iz.lo <= id.lo {
                certified = true;
                break;
            }
            // Exact equality route: all three exact points.
            if iw.is_point() && iz.is_point() && id.is_point() {
                prop_assert!(&iw.lo - &iz.lo <= id.lo);
                certified = true;
                break;
            }
            eps /= Rational::from_integer(BigInt::from(2));
        }
        prop_assert!(certified);
    }

    #[test]
    fn three_term_power_inequality(
        a in positive_rational(60),
        b in positive_rational(60),
        c in positive_rational(60),
        ell in 2u32..5,
    ) {
        // a^s + b^s + c^s ≤ 3^{1-s}(a+b+c)^s: raise to the ℓ-th power,
        // where the right side is the rational 3^{ℓ-1}(a+b+c).
        let rhs_pow = pow_nat(&ratio(3, 1), ell - 1) * (&a + &b + &c);
        let mut eps = ratio(1, 8);
        let mut certified = false;
        for _ in 0..80 {
            let ia = root_enclosure(&a, ell, &eps).unwrap();
            let ib = root_enclosure(&b, ell, &eps).unwrap();
            let ic = root_enclosure(&c, ell, &eps).unwrap();
            let lhs_hi = &ia.hi + &ib.hi + &ic.hi;
            if pow_nat(&lhs_hi, ell) <= rhs_pow {
                certified = true;
                break;
            }
            eps /= Rational::from_integer(BigInt::from(2));
        }
        prop_assert!(certified);
    }

    #[test]
    fn periodic_expansion_reconstructs_value(n in 0i64..1000, d in 1i64..1000) {
        prop_assume!(n < d);
        let q = ratio(n, d);
        let (pre, per) = periodic_expansion(&q).unwrap();
        prop_assert_eq!(periodic_series(&pre, &per, 2), q);
    }

    #[test]
    fn interleaved_limits_have_pair_structured_prefixes(n in 1i64..300, d in 2i64..300) {
        prop_assume!(n < d);
        let x = ratio(n, d);
        let y = h1_limit_value(&x).unwrap();
        // Every even-length prefix of the interleaved expansion is a
        // member of the complementary-pair set.
        for k in 1..12u64 {
            let bits: Vec<bool> =
                (1..=2 * k).map(|i| qsolovay_core::rational::fraction_bit(&y, i)).collect();
            let v = BitString::new(bits).value();
            if v.is_zero() {
                continue;
            }
            let chk = dprime_check(&v).unwrap();
            prop_assert!(chk.member, "prefix of length {} of {} not pair-structured", 2 * k, y);
        }
    }

    #[test]
    fn fixture_names_obey_the_defining_inequality(
        n in 1i64..100,
        d in 2i64..100,
        level in 0u64..24,
    ) {
        prop_assume!(n < d);
        let limit = ratio(n, d);
        let fx = LeftCEReal::fixture(
            "f",
            limit.clone(),
            GapSchedule::new(limit.clone(), ratio(1, 2), 0).unwrap(),
        );
        prop_assume!(fx.is_ok());
        let name = fx.unwrap().name().unwrap();
        let err = (limit - name.level(level)).abs();
        prop_assert!(err <= two_pow(-(level as i64)));
        // Consecutive consistency of the name levels.
        let step = (name.level(level) - name.level(level + 1)).abs();
        prop_assert!(step <= two_pow(-(level as i64)) + two_pow(-(level as i64 + 1)));
    }

    #[test]
    fn fixture_stages_monotone(
        n in 1i64..60, d in 2i64..60,
        base_num in 1i64..4,
    ) {
        prop_assume!(n < d);
        let limit = ratio(n, d);
        let base = ratio(base_num, 4);
        let fx = LeftCEReal::fixture(
            "f",
            limit,
            GapSchedule::new(ratio(1, 8), base, 0).unwrap(),
        );
        prop_assume!(fx.is_ok());
        prop_assert!(fx.unwrap().validate(64).is_ok());
    }
}

#[test]
fn one_is_not_pair_structured_boundary() {
    // Degenerate expansions at the domain edges are rejected, not
    // misclassified.
    assert!(dprime_check(&Rational::zero()).is_err());
    assert!(dprime_check(&Rational::one()).is_err());
}
