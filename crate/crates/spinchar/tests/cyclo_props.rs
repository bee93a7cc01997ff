//! Property tests for exact cyclotomic arithmetic, checked against a
//! floating-point embedding oracle.

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use spinchar::cyclo::CycloNum;

/// A random element: a short sum of rational multiples of roots of unity,
/// together with its floating-point image computed independently.
fn element() -> impl Strategy<Value = (CycloNum, (f64, f64))> {
    let conductors = prop::sample::select(vec![1u32, 3, 4, 5, 8, 12, 15, 20, 24]);
    (
        conductors,
        prop::collection::vec((-1000i64..=1000, 1i64..=1000, 0i64..120), 1..4),
    )
        .prop_map(|(m, terms)| {
            let mut v = CycloNum::zero();
            let (mut re, mut im) = (0.0, 0.0);
            for (a, b, k) in terms {
                let q = BigRational::new(BigInt::from(a), BigInt::from(b));
                v += CycloNum::root_of_unity(m, k).scale(&q);
                let ang = 2.0 * std::f64::consts::PI * k as f64 / m as f64;
                re += a as f64 / b as f64 * ang.cos();
                im += a as f64 / b as f64 * ang.sin();
            }
            (v, (re, im))
        })
}

fn close(a: (f64, f64), b: (f64, f64), scale: f64) -> bool {
    let tol = 1e-9 * scale.max(1.0);
    (a.0 - b.0).abs() <= tol && (a.1 - b.1).abs() <= tol
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms((a, _) in element(), (b, _) in element(), (c, _) in element()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, CycloNum::zero());
    }

    #[test]
    fn inverse((a, _) in element()) {
        prop_assume!(!a.is_zero());
        prop_assert_eq!(&a * &a.inv().unwrap(), CycloNum::one());
    }

    #[test]
    fn numeric_embedding_matches((a, fa) in element(), (b, fb) in element()) {
        prop_assert!(close(a.to_complex(), fa, 1.0));
        let s = (&a + &b).to_complex();
        prop_assert!(close(s, (fa.0 + fb.0, fa.1 + fb.1), 1.0));
        let p = (&a * &b).to_complex();
        let expect = (fa.0 * fb.0 - fa.1 * fb.1, fa.0 * fb.1 + fa.1 * fb.0);
        prop_assert!(close(p, expect, expect.0.abs() + expect.1.abs()));
        let c = a.conj().to_complex();
        prop_assert!(close(c, (fa.0, -fa.1), 1.0));
    }

    #[test]
    fn lift_then_reduce_is_identity((a, _) in element(), k in prop::sample::select(vec![2u32, 3, 5])) {
        let lifted = a.lift(k);
        prop_assert_eq!(&lifted, &a);
        prop_assert_eq!(lifted.reduce(), a.reduce());
        prop_assert_eq!(lifted.reduce().conductor(), a.reduce().conductor());
    }

    #[test]
    fn p_integrality_is_multiplicative((a, _) in element(), (b, _) in element(), p in prop::sample::select(vec![3u64, 5, 7])) {
        if a.is_p_integral(p) && b.is_p_integral(p) {
            prop_assert!((&a * &b).is_p_integral(p));
        }
    }

    #[test]
    fn render_parse_round_trip((a, _) in element()) {
        let back: CycloNum = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }
}
