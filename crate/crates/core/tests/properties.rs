mod common;

use std::f64::consts::{E, PI};

use proptest::prelude::*;

use eulersum::catalog::{get, Lhs};
use eulersum::closed_form::{canonicalize_angle, cf_add, cf_eval, ClosedForm, Rational};
use eulersum::mellin::{factorization_check, factorization_test_points, inverse_mellin_example, ContourSpec};
use eulersum::oracles::{clausen_from_dilog, psi_integral};
use eulersum::quadrature::tanh_sinh;
use eulersum::specfun::{
    clausen2, digamma, euler_gamma, gamma_ratio_log, ln_beta, ln_gamma, polylog, trigamma, zeta_int,
};
use eulersum::summation::{sum_1d, sum_2d, Summand1D, TailClass};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn psi_recurrences(x in 1e-3f64..=50.0) {
        let d = digamma(x + 1.0).unwrap() - digamma(x).unwrap() - 1.0 / x;
        let t = trigamma(x + 1.0).unwrap() - trigamma(x).unwrap() + 1.0 / (x * x);
        prop_assert!(d.abs() <= 1e-12, "psi at {x}: {d:e}");
        prop_assert!(t.abs() <= 1e-12, "psi' at {x}: {t:e}");
    }

    #[test]
    fn clausen_odd_and_periodic(th in -30.0f64..30.0) {
        prop_assert!((clausen2(-th) + clausen2(th)).abs() <= 1e-13);
        prop_assert!((clausen2(th + 2.0 * PI) - clausen2(th)).abs() <= 1e-13);
    }
}

#[test]
fn trigamma_one_is_zeta_two() {
    assert!((trigamma(1.0).unwrap() - zeta_int(2).unwrap()).abs() <= 1e-13);
}

#[test]
fn clausen_duplication() {
    for i in 1..500 {
        let th = (PI / 2.0) * i as f64 / 500.0;
        let d = clausen2(2.0 * th) - 2.0 * clausen2(th) + 2.0 * clausen2(PI - th);
        assert!(d.abs() <= 1e-11, "theta = {th}: {d:e}");
    }
}

#[test]
fn polylog_at_one_is_zeta() {
    for n in 2..=8 {
        let d = polylog(n, 1.0).unwrap() - zeta_int(n).unwrap();
        assert!(d.abs() <= 1e-12, "n = {n}: {d:e}");
    }
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `Γ(n)²/Γ(2n) = ((n−1)!)²/(2n−1)!` as a reduced fraction.
fn beta_exact(n: u128) -> (u128, u128) {
    let (mut num, mut den) = (1u128, 1u128);
    for j in 1..n {
        for f in [j, j] {
            num *= f;
            let g = gcd(num, den);
            (num, den) = (num / g, den / g);
        }
    }
    for j in 1..2 * n {
        den *= j;
        let g = gcd(num, den);
        (num, den) = (num / g, den / g);
    }
    (num, den)
}

#[test]
fn gamma_ratio_matches_factorials() {
    for n in 1..=20u32 {
        let (num, den) = beta_exact(n.into());
        let exact = num as f64 / den as f64;
        let x = f64::from(n);
        let via_ratio = (gamma_ratio_log(x, 2.0 * x).unwrap() + ln_gamma(x).unwrap()).exp();
        let via_beta = ln_beta(x, x).unwrap().exp();
        for v in [via_ratio, via_beta] {
            assert!(((v - exact) / exact).abs() <= 1e-12, "n = {n}: {v} vs {num}/{den}");
        }
    }
}

fn rationals(max_den: i64) -> Vec<Rational> {
    let mut out = Vec::new();
    for den in 1..=max_den {
        for num in -3 * den..=3 * den {
            out.push(Rational::new(num, den).unwrap());
        }
    }
    out
}

#[test]
fn canonical_angles_are_fixed_points() {
    for a in rationals(24) {
        let c = canonicalize_angle(a);
        if let Some(angle) = c.angle {
            let again = canonicalize_angle(angle);
            assert_eq!(again.angle, Some(angle), "{a}");
            assert_eq!((again.sign, again.factor), (1, Rational::ONE), "{a}");
        }
    }
}

#[test]
fn canonical_rewrites_preserve_values() {
    for a in rationals(24) {
        let c = canonicalize_angle(a);
        let before = clausen2(a.to_f64() * PI);
        let after = match c.angle {
            None => 0.0,
            Some(angle) => f64::from(c.sign) * c.factor.to_f64() * clausen2(angle.to_f64() * PI),
        };
        assert!((before - after).abs() <= 1e-12, "{a}: {before} vs {after}");
    }
}

fn small_form() -> impl Strategy<Value = ClosedForm> {
    let q = (-50i64..=50, 1i64..=12).prop_map(|(n, d)| Rational::new(n, d).unwrap());
    let angle = (1i64..=23, 1i64..=24).prop_map(|(n, d)| Rational::new(n, d).unwrap());
    (q.clone(), q.clone(), q.clone(), q, angle).prop_map(|(c1, c2, c3, c4, a)| {
        [
            ClosedForm::rational(c1),
            ClosedForm::zeta(c2, 2).unwrap(),
            ClosedForm::zeta(c3, 3).unwrap(),
            ClosedForm::pi_cl2(c4, a).unwrap(),
        ]
        .iter()
        .fold(ClosedForm::zero(), |acc, p| cf_add(&acc, p).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn cf_add_is_associative_and_commutative(a in small_form(), b in small_form(), c in small_form()) {
        let ab = cf_add(&a, &b).unwrap();
        prop_assert_eq!(&ab, &cf_add(&b, &a).unwrap());
        prop_assert_eq!(cf_add(&ab, &c).unwrap(), cf_add(&a, &cf_add(&b, &c).unwrap()).unwrap());
    }
}

fn one_dim(id: &str) -> Summand1D {
    match get(id).unwrap().lhs {
        Lhs::One(s) => s,
        Lhs::Two(_) => panic!("{id} is two-dimensional"),
    }
}

fn value(s: &Summand1D) -> (f64, f64) {
    let r = sum_1d(s, 1e-11).unwrap();
    (r.value, r.error_estimate)
}

/// `Σ a − Σ b` against the directly summed difference series.
fn shift_pair(a: &str, b: &str, diff: Summand1D, exact: f64) {
    let (va, ea) = value(&one_dim(a));
    let (vb, eb) = value(&one_dim(b));
    let (vd, ed) = value(&diff);
    let lhs = va - vb;
    assert!((lhs - vd).abs() <= 1e-9, "{a} - {b} = {lhs} vs difference series {vd}");
    assert!((lhs - exact).abs() <= 1e-9 + ea + eb, "{a} - {b} = {lhs} vs {exact}");
    assert!((vd - exact).abs() <= 1e-9 + ed);
}

#[test]
fn p1_is_p2_plus_zeta3() {
    let z3 = zeta_int(3).unwrap();
    shift_pair("P1", "P2", Summand1D::new(1, TailClass::poly(3, 0), |x| 1.0 / (x * x * x)), z3);
}

#[test]
fn recursion_shifts_between_partners() {
    let (z2, z3) = (zeta_int(2).unwrap(), zeta_int(3).unwrap());
    let h = |x: f64| euler_gamma() + digamma(x).unwrap();
    // ψ'(n) − ψ'(1+n) = 1/n²
    shift_pair(
        "P3",
        "P4",
        Summand1D::new(1, TailClass::poly(4, 0), |x| 1.0 / (x * x * x * (x + 1.0))),
        z3 - z2 + 1.0,
    );
    // [γ+ψ(1+n)]² − [γ+ψ(n)][γ+ψ(1+n)] = [γ+ψ(1+n)]/n
    shift_pair(
        "B4",
        "B2",
        Summand1D::new(1, TailClass::poly(3, 1), move |x| h(1.0 + x) / (x * x * (x + 1.0))),
        2.0 * z3 - z2,
    );
    // [γ+ψ(n)][γ+ψ(1+n)] − [γ+ψ(n)]² = [γ+ψ(n)]/n
    shift_pair(
        "B2",
        "B1",
        Summand1D::new(1, TailClass::poly(3, 1), move |x| h(x) / (x * x * (x + 1.0))),
        z3 - 1.0,
    );
}

#[test]
fn reductions_agree_with_nested_sums() {
    for id in ["D1", "D2", "D4", "D5", "D6"] {
        let Lhs::Two(s) = get(id).unwrap().lhs else { panic!("{id}") };
        assert!(s.reduction().is_some(), "{id}");
        let reduced = sum_2d(&s, 1e-9).unwrap();
        let nested = sum_2d(&s.without_reduction(), 1e-8).unwrap_or_else(|e| panic!("{id}: {e}"));
        let d = (reduced.value - nested.value).abs();
        assert!(
            d <= 1e-8 + reduced.error_estimate + nested.error_estimate,
            "{id}: reduced {} nested {} ({d:e})",
            reduced.value,
            nested.value
        );
    }
}

#[test]
fn d5_matches_theorem_k1() {
    let Lhs::Two(d5) = get("D5").unwrap().lhs else { panic!() };
    let a = sum_2d(&d5, 1e-9).unwrap().value;
    let (b, _) = value(&one_dim("T1.k1"));
    assert!((a - b).abs() <= 1e-8, "{a} vs {b}");
    assert!((a - 2.0 * zeta_int(3).unwrap()).abs() <= 1e-8);
}

#[test]
fn declared_tail_classes_match_decay() {
    for (id, s) in common::one_dim_summands() {
        s.check_tail_class().unwrap_or_else(|e| panic!("{id}: {e}"));
    }
}

#[test]
fn tail_soundness_on_catalog_series() {
    for (id, s) in common::one_dim_summands() {
        if !common::is_exponential(&s) {
            common::tail_soundness(&id, &s).unwrap();
        }
    }
}

#[test]
fn strategies_agree_on_catalog_series() {
    for (id, s) in common::one_dim_summands() {
        common::strategy_agreement(&id, &s).unwrap();
    }
}

#[test]
fn inverse_mellin_defect_inside_envelope() {
    let spec = ContourSpec::inverse_default();
    for x in [2.0, E, 10.0] {
        for k in 0..=2u32 {
            let r = inverse_mellin_example(k, x, &spec).unwrap();
            let defect = (r.value - x.ln().powi(k as i32)).abs();
            assert!(
                defect <= r.truncation_bound + r.quadrature_error + 1e-13,
                "k={k} x={x}: {defect:e} vs {:e} + {:e}",
                r.truncation_bound,
                r.quadrature_error
            );
        }
    }
}

#[test]
fn doubling_the_height_tightens_the_envelope() {
    for x in [2.0, E, 10.0] {
        for k in 0..=2u32 {
            let mut prev = f64::INFINITY;
            for height in [500.0, 1000.0, 2000.0, 4000.0] {
                let spec = ContourSpec {
                    c: 1.0,
                    height,
                    nodes: (height * 16.0) as usize,
                    tolerance: 10.0,
                };
                let r = inverse_mellin_example(k, x, &spec).unwrap();
                let defect = (r.value - x.ln().powi(k as i32)).abs();
                let envelope = r.truncation_bound + r.quadrature_error + 1e-13;
                assert!(defect <= envelope, "k={k} x={x} T={height}: {defect:e} > {envelope:e}");
                assert!(r.truncation_bound < prev);
                prev = r.truncation_bound;
            }
        }
    }
}

#[test]
fn short_contour_is_refused() {
    let spec = ContourSpec {
        height: 200.0,
        nodes: 3200,
        ..ContourSpec::inverse_default()
    };
    assert!(inverse_mellin_example(0, 2.0, &spec).is_err());
}

#[test]
fn factorization_within_bounds_and_symmetric() {
    let spec = ContourSpec::factorization_default();
    for (a, p, c1, c2) in factorization_test_points() {
        let r = factorization_check(a, p, c1, c2, &spec).unwrap();
        assert!(r.abs_diff <= r.tail_bound + r.refinement_delta + 1e-12, "{r:?}");
        let swapped = factorization_check([a[1], a[0], a[2]], p, c2, c1, &spec).unwrap();
        let d = (swapped.rhs - r.rhs).norm();
        assert!(d <= r.refinement_delta + swapped.refinement_delta + 1e-12, "swap moved rhs by {d:e}");
    }
}

#[test]
fn psi_quadrature_converges() {
    // a coarse tolerance against the oracle's own tight run
    for z in [0.3, 1.5, 4.0, 11.0] {
        let a = z - 1.0;
        let f = |t: f64, _: f64, gap: f64| {
            if gap < 1e-8 {
                return a;
            }
            let ln_t = if t > 0.5 { (-gap).ln_1p() } else { t.ln() };
            -(a * ln_t).exp_m1() / gap
        };
        let coarse = tanh_sinh(f, 0.0, 1.0, 1e-6);
        let fine = psi_integral(z).unwrap();
        let d = (coarse.value - fine.value).abs();
        assert!(d <= coarse.error_estimate.max(1e-15), "z={z}: {d:e} vs {:e}", coarse.error_estimate);
        assert!((fine.value - euler_gamma() - digamma(z).unwrap()).abs() <= 1e-10 + fine.error_estimate);
    }
}

#[test]
fn clausen_oracle_error_covers_difference() {
    for i in 1..40 {
        let th = 2.0 * PI * i as f64 / 40.0;
        let r = clausen_from_dilog(th).unwrap();
        assert!((r.value - clausen2(th)).abs() <= r.error_estimate + 1e-13, "theta = {th}");
    }
}

#[test]
fn closed_form_values_track_basis() {
    let f = cf_add(
        &ClosedForm::zeta(Rational::new(67, 8).unwrap(), 3).unwrap(),
        &ClosedForm::pi_cl2(Rational::integer(-2), Rational::new(1, 2).unwrap()).unwrap(),
    )
    .unwrap();
    let want = 67.0 / 8.0 * zeta_int(3).unwrap() - 2.0 * PI * clausen2(PI / 2.0);
    assert!((cf_eval(&f) - want).abs() <= 1e-13);
}
