use num_complex::Complex64;
use proptest::prelude::*;

use super::*;
use crate::characters::{quadratic_gauss_sum, quadratic_sign, AdditiveCharacter};
use crate::cyclotomic::{CyclotomicIntegers, RationalCyclotomic};
use crate::field::make_field;

fn int(p: u32, n: i64) -> CyclotomicSum {
    CyclotomicSum::from_int(p, n)
}

fn spec(p: u64, e: u32, u: u32, a: u32, b: u32) -> GSumSpec {
    let f = make_field(p, e).unwrap();
    GSumSpec::new(&f, u, Elem(a), Elem(b)).unwrap()
}

/// Direct `Σ_{c != 0} χ(a c^u + b c^{-1})` with field arithmetic only.
fn g_naive(spec: &GSumSpec) -> CyclotomicSum {
    let f = &spec.field;
    let mut counts = vec![0i64; f.characteristic() as usize];
    for c in f.elements(true) {
        let x = f.add(
            f.mul(spec.a, f.pow_u(c, spec.u as u64)),
            f.mul(spec.b, f.inv(c).unwrap()),
        );
        counts[f.abs_trace(x) as usize] += 1;
    }
    CyclotomicSum::from_counts(f.characteristic(), counts).unwrap()
}

#[test]
fn weil_sum_examples() {
    let f2 = make_field(2, 1).unwrap();
    let x2 = PolyOverFq::from_codes(&f2, &[0, 0, 1]).unwrap();
    // Σ_{c ∈ F_2} χ(c^2) = χ(0) + χ(1) = 1 - 1
    assert!(weil_sum_brute(&x2, 1).unwrap().is_zero());
    let f9 = make_field(3, 2).unwrap();
    let x = PolyOverFq::x(&f9);
    for s in 1..=2 {
        assert!(weil_sum_brute(&x, s).unwrap().is_zero());
    }
    let c = PolyOverFq::constant(&f9, Elem(0));
    assert_eq!(weil_sum_brute(&c, 2).unwrap(), int(3, 81));
}

#[test]
fn weil_sum_matches_direct_evaluation_in_extension() {
    let f = make_field(3, 1).unwrap();
    let poly = PolyOverFq::from_codes(&f, &[1, 2, 0, 1]).unwrap();
    let big = f.extension(2).unwrap();
    let sub = big.subfield(&f).unwrap();
    let coeffs: Vec<Elem> = poly.coeffs().iter().map(|&c| sub.embed(c)).collect();
    let mut counts = vec![0i64; 3];
    for g in big.elements(false) {
        let v = coeffs.iter().rev().fold(Elem::ZERO, |acc, &c| big.add(big.mul(acc, g), c));
        counts[big.abs_trace(v) as usize] += 1;
    }
    assert_eq!(
        weil_sum_brute(&poly, 2).unwrap(),
        CyclotomicSum::from_counts(3, counts).unwrap()
    );
}

#[test]
fn mult_sum_examples() {
    let f3 = make_field(3, 1).unwrap();
    let eta = MultiplicativeCharacter::quadratic(&f3).unwrap();
    let x2 = PolyOverFq::from_codes(&f3, &[0, 0, 1]).unwrap();
    let v = mult_sum_brute(&x2, &eta, 1).unwrap();
    assert_eq!(v.exact().unwrap().as_integer(), Some(2));
    let f7 = make_field(7, 1).unwrap();
    let psi = MultiplicativeCharacter::new(&f7, 1);
    let x = PolyOverFq::x(&f7);
    assert!(mult_sum_brute(&x, &psi, 1).unwrap().exact().unwrap().is_zero());
    // trivial character counts the points where f does not vanish
    let triv = MultiplicativeCharacter::new(&f7, 0);
    let f = PolyOverFq::from_codes(&f7, &[6, 0, 1]).unwrap(); // x^2 - 1
    let v = mult_sum_brute(&f, &triv, 1).unwrap();
    assert_eq!(v.exact().unwrap().as_integer(), Some(5));
}

#[test]
fn g_sum_examples() {
    // b = 0 and gcd(u, q - 1) = 1: c -> a c^u permutes F_q^*
    let s = spec(5, 1, 3, 2, 0);
    assert_eq!(g_sum_brute(&s, 1).unwrap(), int(5, -1));
    let k = spec(2, 1, 1, 1, 1);
    let values: Vec<i64> = (1..=3)
        .map(|s| g_sum_brute(&k, s).unwrap().as_integer().unwrap())
        .collect();
    assert_eq!(values, [1, 3, -5]);
}

#[test]
fn g_sum_agrees_with_naive_loop() {
    for (p, e) in [(2, 3), (3, 2), (5, 1), (7, 1)] {
        let f = make_field(p, e).unwrap();
        for u in 1..=4 {
            for a in f.elements(true).step_by(2) {
                for b in f.elements(false).step_by(3) {
                    let s = GSumSpec::new(&f, u, a, b).unwrap();
                    assert_eq!(g_sum_brute(&s, 1).unwrap(), g_naive(&s));
                }
            }
        }
    }
}

#[test]
fn gfg_reduces_to_g_sum() {
    let f = make_field(2, 3).unwrap();
    let (a, b) = (Elem(3), Elem(5));
    let fp = PolyOverFq::monomial(&f, a, 2);
    let gp = PolyOverFq::monomial(&f, b, 1);
    let s = GSumSpec::new(&f, 2, a, b).unwrap();
    for ext in 1..=2 {
        assert_eq!(gfg_sum_brute(&fp, &gp, ext).unwrap(), g_sum_brute(&s, ext).unwrap());
    }
    // f = x, g = x over F_2: χ(1 + 1) = 1
    let f2 = make_field(2, 1).unwrap();
    let x = PolyOverFq::x(&f2);
    assert_eq!(gfg_sum_brute(&x, &x, 1).unwrap(), int(2, 1));
    // f = x, g = x^2 over F_3: χ(1 + 1) + χ(2 + 1)
    let f3 = make_field(3, 1).unwrap();
    let x = PolyOverFq::x(&f3);
    let x2 = PolyOverFq::from_codes(&f3, &[0, 0, 1]).unwrap();
    let want = CyclotomicSum::root(3, 2).add(&int(3, 1)).unwrap();
    assert_eq!(gfg_sum_brute(&x, &x2, 1).unwrap(), want);
}

#[test]
fn zero_a_is_rejected() {
    let f = make_field(3, 1).unwrap();
    assert!(matches!(
        GSumSpec::new(&f, 2, Elem(0), Elem(1)),
        Err(Error::ZeroParameter("a"))
    ));
}

#[test]
fn root_power_sum_matches_split_polynomials() {
    // g = Π (x - r_i) over F_q, so p_u = Σ r_i^u directly
    let f = make_field(7, 1).unwrap();
    let roots = [Elem(2), Elem(3), Elem(3), Elem(6)];
    for k in 1..=roots.len() {
        let mut g = PolyOverFq::constant(&f, Elem::ONE);
        for &r in &roots[..k] {
            g = g.mul(&PolyOverFq::new(&f, vec![f.neg(r), Elem::ONE]));
        }
        let c: Vec<Elem> = (1..=k)
            .map(|j| {
                let x = g.coeff(k - j);
                if j % 2 == 1 {
                    f.neg(x)
                } else {
                    x
                }
            })
            .collect();
        for u in 1..=7 {
            let direct = roots[..k]
                .iter()
                .fold(Elem::ZERO, |acc, &r| f.add(acc, f.pow_u(r, u as u64)));
            assert_eq!(root_power_sum(&f, &c, u), direct, "k = {k}, u = {u}");
        }
    }
}

#[test]
fn lambda_basic_cases() {
    let s = spec(5, 1, 2, 3, 2);
    let f = &s.field;
    // degree 1: λ(x - c) = χ(a c^u + b c^{-1})
    for c in f.elements(true) {
        let g = PolyOverFq::new(f, vec![f.neg(c), Elem::ONE]);
        let want = f.abs_trace(f.add(
            f.mul(s.a, f.mul(c, c)),
            f.mul(s.b, f.inv(c).unwrap()),
        ));
        assert_eq!(lambda_eval(&g, &s).unwrap(), LambdaValue::Index(want));
    }
    let g = PolyOverFq::from_codes(f, &[0, 1, 1]).unwrap();
    assert_eq!(lambda_eval(&g, &s).unwrap(), LambdaValue::Zero);
    let not_monic = PolyOverFq::from_codes(f, &[1, 2]).unwrap();
    assert!(matches!(lambda_eval(&not_monic, &s), Err(Error::NotMonic)));
    let one = PolyOverFq::constant(f, Elem::ONE);
    assert_eq!(lambda_eval(&one, &s).unwrap(), LambdaValue::Index(0));
}

fn monic_over_f4(codes: &[u32]) -> PolyOverFq {
    let f = make_field(2, 2).unwrap();
    let mut c: Vec<u64> = codes.iter().map(|&x| x as u64).collect();
    c.push(1);
    PolyOverFq::from_codes(&f, &c).unwrap()
}

proptest! {
    #[test]
    fn lambda_is_multiplicative(
        g in proptest::collection::vec(0u32..4, 0..4),
        h in proptest::collection::vec(0u32..4, 0..4),
        u in 1u32..5,
        a in 1u32..4,
        b in 0u32..4,
    ) {
        let s = spec(2, 2, u, a, b);
        let (g, h) = (monic_over_f4(&g), monic_over_f4(&h));
        let lg = lambda_eval(&g, &s).unwrap();
        let lh = lambda_eval(&h, &s).unwrap();
        let lgh = lambda_eval(&g.mul(&h), &s).unwrap();
        let want = match (lg, lh) {
            (LambdaValue::Index(x), LambdaValue::Index(y)) => LambdaValue::Index((x + y) % 2),
            _ => LambdaValue::Zero,
        };
        prop_assert_eq!(lgh, want);
    }
}

#[test]
fn degree_one_stratum_is_g_sum() {
    for (p, e) in [(2, 2), (3, 1), (5, 1), (2, 3)] {
        let f = make_field(p, e).unwrap();
        for u in 1..=3 {
            for a in f.elements(true) {
                for b in f.elements(false) {
                    let s = GSumSpec::new(&f, u, a, b).unwrap();
                    assert_eq!(phi_k_lambda_sum(1, &s).unwrap(), g_sum_brute(&s, 1).unwrap());
                }
            }
        }
    }
}

#[test]
fn kloosterman_lpolynomial_is_one_k_q() {
    for (p, e) in [(2, 1), (3, 1), (2, 2), (5, 1)] {
        let f = make_field(p, e).unwrap();
        let q = f.order() as i64;
        for a in f.elements(true) {
            for b in f.elements(true) {
                let s = GSumSpec::new(&f, 1, a, b).unwrap();
                let l = l_polynomial(&s, true).unwrap();
                assert_eq!(l.coeffs[1], g_sum_brute(&s, 1).unwrap());
                assert_eq!(l.coeffs[2], int(p as u32, q));
                assert_eq!(l.vanishes_beyond(), Some(true));
            }
        }
    }
}

#[test]
fn l_polynomial_refuses_without_hypothesis() {
    let s = spec(3, 1, 3, 1, 0);
    assert!(matches!(l_polynomial(&s, false), Err(Error::HypothesisViolated(_))));
}

#[test]
fn budget_is_enforced_for_enumeration() {
    let f = Field::with_budget(5, 1, 50).unwrap();
    let s = GSumSpec::new(&f, 2, Elem(1), Elem(1)).unwrap();
    assert!(phi_k_lambda_sum(2, &s).is_ok());
    assert!(matches!(
        phi_k_lambda_sum(3, &s),
        Err(Error::BudgetExceeded { .. })
    ));
}

#[test]
fn substitution_identity() {
    // G_u(a, b) = G_u(a b^u, 1) for b != 0
    for (p, e) in [(2, 3), (3, 2), (5, 1), (7, 1)] {
        let f = make_field(p, e).unwrap();
        for u in 1..=4 {
            for a in f.elements(true) {
                for b in f.elements(true) {
                    let left = g_sum_brute(&GSumSpec::new(&f, u, a, b).unwrap(), 1).unwrap();
                    let ab = f.mul(a, f.pow_u(b, u as u64));
                    let right = g_sum_brute(&GSumSpec::new(&f, u, ab, Elem::ONE).unwrap(), 1).unwrap();
                    assert_eq!(left, right);
                }
            }
        }
    }
}

#[test]
fn spectral_trivial_and_kloosterman() {
    let one_minus_z = LPolynomial {
        coeffs: vec![int(2, 1), int(2, -1)],
        provenance: Provenance::ClosedForm,
        next_coefficient: None,
    };
    let sp = spectral_from_lpoly(&one_minus_z).unwrap();
    assert!((sp.omegas[0] - Complex64::new(1.0, 0.0)).norm() < 1e-12);

    let l = l_polynomial(&spec(2, 1, 1, 1, 1), false).unwrap();
    let sp = spectral_from_lpoly(&l).unwrap();
    let s7 = 7f64.sqrt();
    for w in &sp.omegas {
        assert!((w.norm() - 2f64.sqrt()).abs() < 1e-12);
        assert!((w.re + 0.5).abs() < 1e-12 && (w.im.abs() - s7 / 2.0).abs() < 1e-12);
    }
    let report = verify_weil_bound(&sp, 2, true);
    assert!((report.max_ratio - 1.0).abs() < 1e-9 && (report.min_ratio - 1.0).abs() < 1e-9);
}

#[test]
fn initial_sums_give_the_same_lpolynomial() {
    let s = spec(2, 1, 1, 1, 1);
    let values = [int(2, 1), int(2, 3)];
    let sp = spectral_from_initial_sums(&values).unwrap();
    let e = sp.exact_e_integral().unwrap();
    assert_eq!(e, vec![int(2, -1), int(2, 2)]);
    let l = l_polynomial(&s, false).unwrap();
    assert_eq!(l.elementary(), e);
    assert_eq!(predict_sum(&sp, 2, 3).unwrap(), int(2, -5));
    // t = 1: value -ω recovers ω
    let sp = spectral_from_initial_sums(&[int(3, -4)]).unwrap();
    assert!((sp.omegas[0] - Complex64::new(4.0, 0.0)).norm() < 1e-12);
}

#[test]
fn weil_sum_prediction_from_initial_values() {
    // deg f = 3 over F_3: two ω's from S_1, S_2 predict S_3 and S_4
    let f = make_field(3, 1).unwrap();
    let poly = PolyOverFq::from_codes(&f, &[0, 1, 0, 1]).unwrap();
    let init: Vec<CyclotomicSum> = (1..=2).map(|s| weil_sum_brute(&poly, s).unwrap()).collect();
    let sp = spectral_from_initial_sums(&init).unwrap();
    for s in 3..=4 {
        assert_eq!(predict_sum(&sp, 3, s as usize).unwrap(), weil_sum_brute(&poly, s).unwrap());
    }
}

#[test]
fn predictions_match_brute_force() {
    for (p, e, u, a, b) in [(2, 2, 2, 1, 2), (2, 1, 1, 1, 1), (5, 1, 2, 2, 3), (3, 1, 3, 1, 2)] {
        let s = spec(p, e, u, a, b);
        let l = l_polynomial(&s, false).unwrap();
        let sp = spectral_from_lpoly(&l).unwrap();
        let q = s.field.order() as f64;
        for ext in 1..=5u32 {
            let brute = g_sum_brute(&s, ext).unwrap();
            assert_eq!(predict_sum(&sp, p as u32, ext as usize).unwrap(), brute);
            let delta = (sp.predicted_complex(ext) - brute.to_complex()).norm();
            assert!(delta <= 1e-6 * (u as f64 + 1.0) * q.powf(ext as f64 / 2.0));
        }
    }
}

#[test]
fn prediction_reproduces_inputs_and_base_case() {
    let s = spec(3, 1, 2, 1, 1);
    let l = l_polynomial(&s, false).unwrap();
    let sp = spectral_from_lpoly(&l).unwrap();
    let e = sp.exact_e.clone().unwrap();
    let out = predict_from_elementary(&e, 3, 3);
    assert_eq!(out[0], e[0].neg());
    for (k, v) in out.iter().enumerate() {
        let brute = g_sum_brute(&s, k as u32 + 1).unwrap();
        assert_eq!(v, &RationalCyclotomic::from(&brute));
    }
}

#[test]
fn dropping_the_factor_s_breaks_the_recursion() {
    // without s on the last term the s = 2 value already disagrees
    let s = spec(2, 1, 1, 1, 1);
    let e = spectral_from_lpoly(&l_polynomial(&s, false).unwrap())
        .unwrap()
        .exact_e_integral()
        .unwrap();
    let g1 = e[0].neg();
    let without_s = e[0].mul(&g1).unwrap().add(&e[1]).unwrap();
    assert_eq!(without_s.as_integer(), Some(1));
    assert_eq!(g_sum_brute(&s, 2).unwrap().as_integer(), Some(3));
}

#[test]
fn kloosterman_routes_agree() {
    for (p, e) in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)] {
        let f = make_field(p, e).unwrap();
        let ring = CyclotomicIntegers { order: p as u32 };
        let q = f.order() as i64;
        for a in f.elements(true) {
            for b in f.elements(true).take(3) {
                let s = GSumSpec::new(&f, 1, a, b).unwrap();
                let k = g_sum_brute(&s, 1).unwrap();
                assert_eq!(kloosterman_recursive(&ring, &k, q, 0), int(p as u32, -2));
                for ext in 1..=5 {
                    let brute = g_sum_brute(&s, ext).unwrap();
                    assert_eq!(kloosterman_recursive(&ring, &k, q, ext as usize), brute);
                    assert_eq!(kloosterman_dickson(&ring, &k, q, ext as usize), brute);
                }
            }
        }
    }
}

#[test]
fn printed_kloosterman_recursion_departs_at_s_two() {
    let ring = CyclotomicIntegers { order: 2 };
    let k = int(2, 1);
    assert_eq!(kloosterman_printed_recursion(&ring, &k, 2), int(2, 1));
    assert_eq!(kloosterman_recursive(&ring, &k, 2, 2), int(2, 3));
    assert_eq!(kloosterman_dickson(&ring, &k, 2, 2), int(2, 3));
}

#[test]
fn closed_forms_match_enumeration() {
    for (p, e) in [(2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (7, 1)] {
        let f = make_field(p, e).unwrap();
        for a in f.elements(true) {
            for b in f.elements(true) {
                let check = ClosedFormCheck::run(&f, a, b, ClosedFormVariant::Corrected).unwrap();
                assert!(check.all_match(), "q = {}, a = {}, b = {}", f.order(), a.0, b.0);
            }
        }
    }
}

#[test]
fn corrected_closed_form_coefficients() {
    // odd characteristic: A_3 = q η(a) g(η, χ)
    for (p, e) in [(3, 1), (5, 1)] {
        let f = make_field(p, e).unwrap();
        let g = quadratic_gauss_sum(&AdditiveCharacter::canonical(&f)).unwrap();
        let q = f.order() as i64;
        for a in f.elements(true) {
            let s = GSumSpec::new(&f, 2, a, Elem(1)).unwrap();
            let eta = quadratic_sign(&f, a).unwrap();
            assert_eq!(phi_k_lambda_sum(3, &s).unwrap(), g.int_scale(q * eta));
        }
    }
    // characteristic 2: A_2 = q and A_3 = 0
    let f = make_field(2, 3).unwrap();
    let s = GSumSpec::new(&f, 2, Elem(3), Elem(6)).unwrap();
    assert_eq!(phi_k_lambda_sum(2, &s).unwrap(), int(2, 8));
    assert!(phi_k_lambda_sum(3, &s).unwrap().is_zero());
}

#[test]
fn printed_closed_forms_disagree_with_enumeration() {
    let f = make_field(2, 2).unwrap();
    let check = ClosedFormCheck::run(&f, Elem(1), Elem(1), ClosedFormVariant::Printed).unwrap();
    assert_eq!(check.matches, [true, true, false, false]);
    assert_eq!(check.closed.coeffs[2], int(2, 5));
    assert_eq!(check.enumerated.coeffs[2], int(2, 4));
}

#[test]
fn bound_gate_and_probe_plumbing() {
    let s = spec(2, 3, 2, 1, 1);
    assert!(!s.bound_hypothesis());
    let sp = spectral_from_lpoly(&l_polynomial(&s, false).unwrap()).unwrap();
    let r = verify_weil_bound(&sp, 8, s.bound_hypothesis());
    assert!(!r.asserted && !r.violation);

    let s = spec(5, 1, 2, 2, 3);
    assert!(s.bound_hypothesis());
    let sp = spectral_from_lpoly(&l_polynomial(&s, false).unwrap()).unwrap();
    let r = verify_weil_bound(&sp, 5, true);
    assert!(r.asserted && !r.violation);
    assert!(r.max_ratio <= 1.0 + BOUND_SLACK);

    let empty = probe_csv(&probe_open_question(&ProbeGrid::default()).unwrap());
    assert_eq!(empty, format!("{PROBE_HEADER}\n"));
    let f = make_field(3, 1).unwrap();
    let rows = probe_open_question(&ProbeGrid::new(vec![f], vec![1, 2])).unwrap();
    assert_eq!(rows.len(), 8);
    for r in rows.iter().filter(|r| r.u == 1) {
        assert!((r.min_ratio - 1.0).abs() < 1e-9 && (r.max_ratio - 1.0).abs() < 1e-9);
    }
}

#[test]
fn lpoly_report_passes_and_serializes() {
    let s = spec(3, 1, 2, 1, 2);
    let r = lpoly_report(&s, true, 4).unwrap();
    assert!(r.passed(), "{:?}", r.failures);
    let text = serde_json::to_string(&r.json).unwrap();
    for key in ["\"spec\"", "\"L\"", "\"omegas\"", "\"checks\""] {
        assert!(text.contains(key));
    }
}
