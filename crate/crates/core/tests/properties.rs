//! Property tests over sampled parameters.

use std::f64::consts::PI;

use hyperxform_core::integrals::{
    closed_form_i, closed_form_ii, quad_i, quad_i_over, quad_ii, quad_ii_over, transformation_bridge,
    verify_ratio_identity, verify_sign_bridge, verify_theta_identity, IntegralSpec,
};
use hyperxform_core::transform::{NegativeParams, SelectionReason};
use hyperxform_core::{
    binom_char, coefficients, euler_transform_params, eval_series, eval_transformed, ode_residual,
    reflect_char, select_representation, termination_index, triple_sums, EvalPoint, HypergeometricParams,
    Representation, Scalar, TripleParams,
};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Scalar> {
    (-24i64..=24, 1i64..=6).prop_map(|(p, q)| Scalar::ratio(p, q))
}

fn valid_c() -> impl Strategy<Value = Scalar> {
    rational().prop_filter("c must not be a nonpositive integer", |c| !c.is_nonpositive_integer())
}

fn params() -> impl Strategy<Value = HypergeometricParams> {
    (rational(), rational(), valid_c()).prop_map(|(a, b, c)| HypergeometricParams::new(a, b, c).unwrap())
}

fn sign(k: usize) -> Scalar {
    if k.is_multiple_of(2) {
        Scalar::one()
    } else {
        Scalar::int(-1)
    }
}

fn factorial(n: u32) -> u128 {
    (1..=n as u128).product()
}

proptest! {
    #[test]
    fn reflection(m in rational(), k in 0usize..16) {
        let direct = binom_char(&-&m, k);
        prop_assert_eq!(&reflect_char(&m, k), &direct);
        prop_assert_eq!(&sign(k) * &binom_char(&m.add_int(k as i64 - 1), k), direct);
    }

    #[test]
    fn pascal(m in rational(), k in 1usize..16) {
        let m1 = m.add_int(-1);
        prop_assert_eq!(binom_char(&m, k), &binom_char(&m1, k) + &binom_char(&m1, k - 1));
    }

    #[test]
    fn integer_upper_matches_factorials(m in 0u32..=30, k in 0u32..=30) {
        let value = binom_char(&Scalar::int(m as i64), k as usize);
        if k > m {
            prop_assert!(value.is_zero());
        } else {
            let expected = factorial(m) / (factorial(k) * factorial(m - k));
            prop_assert_eq!(value, Scalar::int(expected as i64));
        }
    }

    #[test]
    fn sign_corollaries(n in 0i64..=15, i in 0usize..=15) {
        let ii = i as i64;
        let ch = |m: i64| binom_char(&Scalar::int(m), i);
        prop_assert_eq!(ch(n + ii), &sign(i) * &ch(-n - 1));
        prop_assert_eq!(ch(-n - 1 + ii), &sign(i) * &ch(n));
        prop_assert!(verify_sign_bridge(n, i));
    }

    #[test]
    fn transform_is_an_involution(p in params()) {
        let once = euler_transform_params(&p);
        let twice = euler_transform_params(&once.series_params());
        prop_assert_eq!(&twice.alpha, p.a());
        prop_assert_eq!(&twice.beta, p.b());
        prop_assert_eq!(twice.exponent, -&once.exponent);
    }

    #[test]
    fn termination_swap(p in params()) {
        let tp = euler_transform_params(&p);
        let expected = tp.alpha.is_nonpositive_integer() || tp.beta.is_nonpositive_integer();
        prop_assert_eq!(termination_index(&tp.series_params()).is_some(), expected);
    }

    #[test]
    fn parametrizations_round_trip(p in params()) {
        let np = NegativeParams::from_params(&p);
        prop_assert_eq!(&np.to_params().unwrap(), &p);
        let tp = TripleParams::from_negative(&np).unwrap();
        prop_assert_eq!(tp.to_params().unwrap(), p);
    }

    #[test]
    fn ode_kill_exact(p in params(), n in 2usize..=12) {
        let res = ode_residual(&p, n).unwrap();
        prop_assert!(res.residual_coefficients[..n].iter().all(Scalar::is_zero));
    }

    // The z coefficients obey (k+1)(c+k) z_{k+1} = (α+k)(β+k) z_k, and the
    // transformed operator kills the truncated z just as the original one
    // kills s.
    #[test]
    fn transformed_ode_recurrence(p in params(), n in 2usize..=12) {
        let tp = euler_transform_params(&p);
        let z = coefficients(&tp.series_params(), n).unwrap();
        for k in 0..n {
            let kk = k as i64;
            let left = z.coefficients[k + 1].mul_int(kk + 1) * tp.c.add_int(kk);
            let right = &(&tp.alpha.add_int(kk) * &tp.beta.add_int(kk)) * &z.coefficients[k];
            prop_assert_eq!(left, right);
        }
        let res = ode_residual(&tp.series_params(), n).unwrap();
        prop_assert!(res.residual_coefficients[..n].iter().all(Scalar::is_zero));
    }

    // With a nonnegative integer exponent, (1-x)^n z is a power series whose
    // first N+1 coefficients must reproduce those of s.
    #[test]
    fn product_with_binomial_reproduces_s(a in rational(), b in rational(), exponent in 0i64..=6, n in 0usize..=12) {
        let c = (&a + &b).add_int(exponent);
        prop_assume!(!c.is_nonpositive_integer());
        let p = HypergeometricParams::new(a, b, c).unwrap();
        let s = coefficients(&p, n).unwrap();
        let z = coefficients(&euler_transform_params(&p).series_params(), n).unwrap();
        for k in 0..=n {
            let mut acc = Scalar::zero();
            for j in 0..=k.min(exponent as usize) {
                let w = &sign(j) * &binom_char(&Scalar::int(exponent), j);
                acc = &acc + &(&w * &z.coefficients[k - j]);
            }
            prop_assert_eq!(&acc, &s.coefficients[k]);
        }
    }

    #[test]
    fn selector_prefers_the_terminating_side(p in params(), x in 1i64..=9) {
        let point = EvalPoint::new(Scalar::ratio(x, 10)).unwrap();
        let raw = termination_index(&p).is_some();
        let transformed = termination_index(&euler_transform_params(&p).series_params()).is_some();
        let sel = select_representation(&p, &point, 1e-12);
        match (raw, transformed) {
            (true, false) => {
                prop_assert_eq!(sel.representation, Representation::Raw);
                prop_assert_eq!(sel.reason, SelectionReason::RawTerminates);
            }
            (false, true) => {
                prop_assert_eq!(sel.representation, Representation::Transformed);
                prop_assert_eq!(sel.reason, SelectionReason::TransformedTerminates);
            }
            _ => {}
        }
    }

    #[test]
    fn raw_and_transformed_agree(a in -5.0f64..5.0, b in -5.0f64..5.0, c in -5.0f64..5.0, x in -0.8f64..0.8) {
        prop_assume!(c > 0.0 || (c - c.round()).abs() >= 1e-3);
        let p = HypergeometricParams::new(Scalar::float(a), Scalar::float(b), Scalar::float(c)).unwrap();
        let point = EvalPoint::new(Scalar::float(x)).unwrap();
        let raw = eval_series(&p, &point, 1e-14, 100_000).unwrap().value.to_f64();
        let transformed = eval_transformed(&p, &point, 1e-14, 100_000).unwrap().value.to_f64();
        prop_assert!((raw - transformed).abs() <= 1e-10 * (1.0 + raw.abs()), "raw {} transformed {}", raw, transformed);
    }

    #[test]
    fn triple_sum_formulas(
        e in 0i64..=3, f in rational(), h in rational(), x in prop::sample::select(vec![0.0, 0.125, 0.25, 0.375, 0.5]),
    ) {
        let tp = TripleParams::new(Scalar::int(e), f.clone(), h.clone()).unwrap();
        let point = EvalPoint::new(Scalar::float(x)).unwrap();
        let sums = triple_sums(&tp, &point, 1e-15, 100_000).unwrap();
        let lead = binom_char(&h, e as usize).to_f64();
        prop_assume!(lead.abs() > 1e-6);
        let scale = (1.0 - x).powf(tp.exponent().to_f64());
        let a_sum = sums.a_sum.value.to_f64();
        let b_pred = binom_char(&(&Scalar::int(e - 1) - &h), e as usize).to_f64() * a_sum / (lead * scale);
        let c_pred = binom_char(&(-&f).add_int(-1), e as usize).to_f64() * a_sum / (lead * scale);
        let (b_sum, c_sum) = (sums.b_sum.value.to_f64(), sums.c_sum.value.to_f64());
        prop_assert!((b_pred - b_sum).abs() <= 1e-9 * (1.0 + b_sum.abs()), "B: {} vs {}", b_pred, b_sum);
        prop_assert!((c_pred - c_sum).abs() <= 1e-9 * (1.0 + c_sum.abs()), "C: {} vs {}", c_pred, c_sum);
    }
}

fn integral_spec() -> impl Strategy<Value = IntegralSpec> {
    (0.05f64..0.8, 0u32..=3, 0u32..=3).prop_map(|(a, n, i)| IntegralSpec::new(a, n, i).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn closed_forms_match_quadrature(spec in integral_spec()) {
        prop_assert!((quad_i(&spec).unwrap() - closed_form_i(&spec, 1e-15).unwrap()).abs() <= 1e-8);
        let second = quad_ii(&spec).unwrap();
        prop_assert!((second - closed_form_ii(&spec, 1e-15).unwrap()).abs() <= 1e-8);
    }

    #[test]
    fn ratio_and_theta_identities(spec in integral_spec()) {
        prop_assert!(verify_ratio_identity(&spec, 1e-8).unwrap().passed);
        prop_assert!(verify_theta_identity(&spec, 1e-8).unwrap().passed);
    }

    #[test]
    fn v_bridge(spec in integral_spec()) {
        let bridge = transformation_bridge(&spec, 1e-15).unwrap();
        prop_assert!((bridge.v - bridge.via_raw).abs() <= 1e-10 * (1.0 + bridge.v.abs()));
        prop_assert!((bridge.v - bridge.via_transformed).abs() <= 1e-10 * (1.0 + bridge.v.abs()));
    }

    #[test]
    fn half_period(a in 0.05f64..0.8, n in 0u32..=1, i in 1u32..=4) {
        let spec = IntegralSpec::new(a, n, i).unwrap();
        let full_i = quad_i_over(&spec, 0.0, 2.0 * PI).unwrap();
        let full_ii = quad_ii_over(&spec, 0.0, 2.0 * PI).unwrap();
        prop_assert!((quad_i(&spec).unwrap() - full_i / 2.0).abs() <= 1e-9);
        prop_assert!((quad_ii(&spec).unwrap() - full_ii / 2.0).abs() <= 1e-9);
    }
}

#[test]
fn exact_transformed_matches_raw_when_both_terminate() {
    let mut checked = 0;
    for a in -6i64..=-1 {
        for b in 1i64..=4 {
            for c in 1i64..=6 {
                let p = HypergeometricParams::new(Scalar::int(a), Scalar::int(b), Scalar::int(c)).unwrap();
                let tp = euler_transform_params(&p);
                if !(tp.alpha.is_nonpositive_integer() || tp.beta.is_nonpositive_integer()) {
                    continue;
                }
                for x in [Scalar::ratio(1, 4), Scalar::ratio(1, 2), Scalar::ratio(-3, 4)] {
                    let point = EvalPoint::new(x).unwrap();
                    let raw = eval_series(&p, &point, 1e-12, 100).unwrap();
                    let transformed = eval_transformed(&p, &point, 1e-12, 100).unwrap();
                    assert!(transformed.terminated);
                    assert_eq!(raw.value, transformed.value, "{p}");
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 0);
}
