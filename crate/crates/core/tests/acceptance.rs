//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails. Built with `harness = false`.

// negated comparisons make NaN fail
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod common;

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use eulersum::catalog::{
    build_catalog, theorem1_closed_form, theorem_catalog_id, theorem_row_id, verify_all, verify_all_with,
    verify_identity, verify_with, Lhs, VerificationReport, VerifyOptions, THEOREM_MAX_K,
};
use eulersum::checks::{constants, run_check};
use eulersum::closed_form::{cf_add, cf_equal, ClosedForm, Rational};
use eulersum::specfun::{clausen2, digamma, trigamma};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d).unwrap()
}

/// `a ζ(3) + b ζ(2) + c + d π Cl₂(π/3) + e π Cl₂(π/2)`.
fn form(z3: (i64, i64), z2: (i64, i64), one: (i64, i64), cl3: (i64, i64), cl2: (i64, i64)) -> ClosedForm {
    let parts = [
        ClosedForm::zeta(q(z3.0, z3.1), 3).unwrap(),
        ClosedForm::zeta(q(z2.0, z2.1), 2).unwrap(),
        ClosedForm::rational(q(one.0, one.1)),
        ClosedForm::pi_cl2(q(cl3.0, cl3.1), q(1, 3)).unwrap(),
        ClosedForm::pi_cl2(q(cl2.0, cl2.1), q(1, 2)).unwrap(),
    ];
    parts.iter().fold(ClosedForm::zero(), |acc, p| cf_add(&acc, p).unwrap())
}

/// Expected right-hand sides in catalog order.
fn expected_values() -> Vec<(&'static str, ClosedForm)> {
    const Z: (i64, i64) = (0, 1);
    vec![
        ("T1.k1", form((2, 1), Z, Z, Z, Z)),
        ("T1.k2", form((11, 4), Z, Z, Z, Z)),
        ("T1.k3", form((5, 1), Z, Z, (-2, 3), Z)),
        ("T1.k4", form((67, 8), Z, Z, Z, (-2, 1))),
        ("T1.k6", form((73, 4), Z, Z, (-16, 3), Z)),
        ("A1.k1", form((-5, 8), Z, Z, Z, Z)),
        ("A1.k2", form((23, 16), Z, Z, Z, (-1, 1))),
        ("A1.k3", form((33, 8), Z, Z, (-2, 1), Z)),
        ("R1", form(Z, (1, 1), Z, Z, Z)),
        ("R2", form((2, 1), (-1, 1), Z, Z, Z)),
        ("R3", form((-1, 1), (1, 1), Z, Z, Z)),
        ("P1", form((2, 1), Z, Z, Z, Z)),
        ("P2", form((1, 1), Z, Z, Z, Z)),
        ("P3", form(Z, Z, (1, 1), Z, Z)),
        ("P4", form((-1, 1), (1, 1), Z, Z, Z)),
        ("B1", form(Z, (1, 1), (1, 1), Z, Z)),
        ("B2", form((1, 1), (1, 1), Z, Z, Z)),
        ("B3", form(Z, Z, (3, 1), Z, Z)),
        ("B4", form((3, 1), Z, Z, Z, Z)),
        ("B5", form((2, 1), (1, 1), Z, Z, Z)),
        ("B6", form(Z, (1, 1), (3, 1), Z, Z)),
        ("G1", form((-8, 3), Z, Z, (4, 3), Z)),
        ("G2", form((-4, 5), Z, Z, Z, Z)),
        ("D1", form((2, 1), Z, Z, Z, Z)),
        ("D2", form(Z, (1, 1), Z, Z, Z)),
        ("D3", form((1, 1), Z, Z, Z, Z)),
        ("D4", form(Z, (1, 2), Z, Z, Z)),
        ("D5", form((2, 1), Z, Z, Z, Z)),
        ("D6", form((2, 1), Z, Z, Z, Z)),
        ("D7", form((3, 1), Z, Z, Z, Z)),
        ("D8", form((7, 2), Z, Z, Z, Z)),
    ]
}

fn within(start: Instant, limit: u64) -> Result<Duration, String> {
    let t = start.elapsed();
    if t <= Duration::from_secs(limit) {
        Ok(t)
    } else {
        Err(format!("took {:.1} s, limit {limit} s", t.as_secs_f64()))
    }
}

fn criterion1() -> Outcome {
    let start = Instant::now();
    let catalog = build_catalog();
    let expected = expected_values();
    if catalog.len() != expected.len() {
        return Err(format!("catalog has {} entries, expected {}", catalog.len(), expected.len()));
    }
    let opts = VerifyOptions::default();
    let mut worst = 0.0f64;
    for (e, (id, want)) in catalog.iter().zip(&expected) {
        if e.id != *id {
            return Err(format!("catalog order: found {} where {id} was expected", e.id));
        }
        if !cf_equal(&e.rhs, want) {
            return Err(format!("{id}: right-hand side {} differs from {want}", e.rhs));
        }
        let class_tol = match &e.lhs {
            Lhs::One(_) if e.id.starts_with('G') => 1e-11,
            Lhs::One(_) => 1e-9,
            Lhs::Two(_) if e.is_reduced() => 1e-8,
            Lhs::Two(_) => 1e-7,
        };
        if e.tolerance != class_tol {
            return Err(format!("{id}: tolerance {:e}, class requires {class_tol:e}", e.tolerance));
        }
        let r = verify_identity(e, &opts);
        if !r.pass || !(r.abs_diff <= class_tol) {
            return Err(format!("{id}: |lhs - rhs| = {:e} > {class_tol:e} ({:?})", r.abs_diff, r.note));
        }
        worst = worst.max(r.abs_diff / class_tol);
    }
    let t = within(start, 60)?;
    Ok(format!(
        "{} identities, worst diff/tol {worst:.2e}, {:.1} s",
        catalog.len(),
        t.as_secs_f64()
    ))
}

fn criterion2() -> Outcome {
    let start = Instant::now();
    let mut exact = 0;
    for alternating in [false, true] {
        for k in 1..=THEOREM_MAX_K {
            let cf = theorem1_closed_form(k, alternating).map_err(|e| e.to_string())?;
            if let Some(cat_id) = theorem_catalog_id(k, alternating) {
                let cat = build_catalog().into_iter().find(|e| e.id == cat_id).ok_or(cat_id)?;
                if !cf_equal(&cf, &cat.rhs) {
                    return Err(format!("k={k} alt={alternating}: {cf} vs {cat_id} = {}", cat.rhs));
                }
                exact += 1;
            }
            let id = theorem_row_id(k, alternating);
            let r = verify_with(&id, &VerifyOptions::default()).map_err(|e| e.to_string())?;
            if !(r.abs_diff <= 1e-8) {
                return Err(format!("{id}: |direct - formula| = {:e}", r.abs_diff));
            }
        }
    }
    if exact != 8 {
        return Err(format!("{exact} exact comparisons, expected 8"));
    }
    let t = within(start, 30)?;
    Ok(format!("8 exact matches, 16 rows within 1e-8, {:.1} s", t.as_secs_f64()))
}

fn criterion3() -> Outcome {
    let rows = constants();
    match rows.iter().find(|r| !r.pass) {
        Some(r) => Err(format!("{}: {:.9} does not round to {:.6}", r.name, r.value, r.reference)),
        None => Ok(format!("{} constants round to their 6 d.p. values", rows.len())),
    }
}

fn run_batches(names: &[&str], limit: u64) -> Outcome {
    let start = Instant::now();
    let mut count = 0;
    for name in names {
        let rows = run_check(name).map_err(|e| format!("{name}: {e}"))?;
        if let Some(r) = rows.iter().find(|r| !r.pass) {
            return Err(format!("{}: diff {:e} > {:e}", r.name, r.diff, r.tol));
        }
        count += rows.len();
    }
    let t = within(start, limit)?;
    Ok(format!("{count} comparisons, {:.1} s", t.as_secs_f64()))
}

fn criterion4() -> Outcome {
    run_batches(&["psi", "polylog", "clausen", "g1-triangle"], 30)
}

fn criterion5() -> Outcome {
    run_batches(&["mellin-forward", "mellin-inverse", "factorization"], 60)
}

fn recurrences() -> Result<(), String> {
    for i in 1..=1000 {
        let x = 50.0 * i as f64 / 1000.0;
        let d = (digamma(x + 1.0).unwrap() - digamma(x).unwrap() - 1.0 / x).abs();
        let t = (trigamma(x + 1.0).unwrap() - trigamma(x).unwrap() + 1.0 / (x * x)).abs();
        if d > 1e-12 || t > 1e-12 {
            return Err(format!("recurrence at x = {x}: psi {d:e}, psi' {t:e}"));
        }
    }
    Ok(())
}

fn clausen_properties() -> Result<(), String> {
    for i in 0..1000 {
        let th = -20.0 + 40.0 * (i as f64 + 0.5) / 1000.0;
        let odd = (clausen2(-th) + clausen2(th)).abs();
        let per = (clausen2(th + 2.0 * PI) - clausen2(th)).abs();
        if odd > 1e-13 || per > 1e-13 {
            return Err(format!("Cl2 at {th}: odd {odd:e}, period {per:e}"));
        }
    }
    for i in 1..200 {
        let th = (PI / 2.0) * i as f64 / 200.0;
        let dup = (clausen2(2.0 * th) - 2.0 * clausen2(th) + 2.0 * clausen2(PI - th)).abs();
        if dup > 1e-11 {
            return Err(format!("Cl2 duplication at {th}: {dup:e}"));
        }
    }
    Ok(())
}

fn summand_properties() -> Result<usize, String> {
    let all = common::one_dim_summands();
    for (id, s) in &all {
        if !common::is_exponential(s) {
            common::tail_soundness(id, s)?;
        }
        common::strategy_agreement(id, s)?;
    }
    Ok(all.len())
}

fn determinism() -> Result<(), String> {
    let strip = |v: Vec<VerificationReport>| v.into_iter().map(|r| r.without_timing()).collect::<Vec<_>>();
    let serial = strip(verify_all(false));
    let four = strip(verify_all_with(&VerifyOptions {
        jobs: Some(4),
        ..VerifyOptions::default()
    }));
    let pool = strip(verify_all(true));
    if serial.len() != 47 {
        return Err(format!("verify_all returned {} rows, expected 47", serial.len()));
    }
    if serial != four || serial != pool {
        return Err("verify_all output depends on the job count".into());
    }
    Ok(())
}

fn criterion6() -> Outcome {
    recurrences()?;
    clausen_properties()?;
    let n = summand_properties()?;
    determinism()?;
    Ok(format!(
        "recurrences, Cl2 symmetries, tail soundness and strategy agreement on {n} series, determinism over 1/4/pool jobs"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 6] = [
        ("identity suite", criterion1),
        ("general-k coherence", criterion2),
        ("constant anchors", criterion3),
        ("oracle agreement", criterion4),
        ("Mellin suite", criterion5),
        ("property suites", criterion6),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(msg) => println!("criterion {}: PASS  {name}: {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {msg}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
