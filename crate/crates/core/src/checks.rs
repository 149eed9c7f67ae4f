//! Named batches of cross-checks: oracles against the direct evaluators,
//! the Mellin examples, and the printed constants. Shared by the CLI and the
//! acceptance tests.

use std::f64::consts::{E, FRAC_PI_3};

use serde::Serialize;

use crate::catalog;
use crate::error::{Error, Result};
use crate::mellin::{
    factorization_check, factorization_test_points, inverse_mellin_example, mellin_forward_example, ContourSpec,
};
use crate::oracles::{
    arcsin_sq_integral, clausen_from_dilog, clausen_grid, dilog_sum_integral, dilog_sum_integral_halves,
    logsine_integral, polylog_integral, polylog_recursive_integral, psi_grid, psi_integral,
};
use crate::specfun::{catalan, clausen2, digamma, euler_gamma, polylog, zeta_int};

/// One comparison. `diff` is absolute unless the check's name says
/// otherwise.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRow {
    pub name: String,
    pub value: f64,
    pub reference: f64,
    pub diff: f64,
    pub tol: f64,
    pub pass: bool,
}

impl CheckRow {
    fn new(name: impl Into<String>, value: f64, reference: f64, tol: f64) -> Self {
        let diff = (value - reference).abs();
        CheckRow {
            name: name.into(),
            value,
            reference,
            diff,
            tol,
            pass: diff <= tol,
        }
    }

    fn relative(name: impl Into<String>, value: f64, reference: f64, tol: f64) -> Self {
        let diff = ((value - reference) / reference).abs();
        CheckRow {
            name: name.into(),
            value,
            reference,
            diff,
            tol,
            pass: diff <= tol,
        }
    }
}

/// Names accepted by [`run_check`], in the order `all` runs them.
pub const CHECK_NAMES: [&str; 9] = [
    "constants",
    "psi",
    "polylog",
    "clausen",
    "g1-triangle",
    "mellin-forward",
    "mellin-inverse",
    "factorization",
    "all",
];

/// Runs the named batch.
pub fn run_check(name: &str) -> Result<Vec<CheckRow>> {
    match name {
        "constants" => Ok(constants()),
        "psi" => psi_checks(),
        "polylog" => polylog_checks(),
        "clausen" => clausen_checks(),
        "g1-triangle" => g1_triangle(),
        "mellin-forward" => mellin_forward_checks(),
        "mellin-inverse" => mellin_inverse_checks(),
        "factorization" => factorization_checks(),
        "all" => {
            let mut out = Vec::new();
            for n in &CHECK_NAMES[..CHECK_NAMES.len() - 1] {
                out.extend(run_check(n)?);
            }
            Ok(out)
        }
        other => Err(Error::UnknownId(other.to_string())),
    }
}

/// Six-decimal values of γ, ζ(2), ζ(3), G and Cl₂(π/3) as usually tabulated.
pub const PRINTED_CONSTANTS: [(&str, f64); 5] = [
    ("gamma", 0.577216),
    ("zeta(2)", 1.644934),
    ("zeta(3)", 1.202057),
    ("G", 0.915966),
    ("Cl2(pi/3)", 1.014942),
];

/// The computed constants, in the order of [`PRINTED_CONSTANTS`].
pub fn computed_constants() -> [f64; 5] {
    [
        euler_gamma(),
        zeta_int(2).expect("zeta(2)"),
        zeta_int(3).expect("zeta(3)"),
        catalan(),
        clausen2(FRAC_PI_3),
    ]
}

fn round6(x: f64) -> f64 {
    (x * 1e6).round() / 1e6
}

/// Computed constants rounded to six places against the printed values;
/// passing means the rounding is exact.
pub fn constants() -> Vec<CheckRow> {
    PRINTED_CONSTANTS
        .iter()
        .zip(computed_constants())
        .map(|(&(name, printed), v)| {
            let mut row = CheckRow::new(format!("{name} (6 d.p.)"), v, printed, 0.0);
            row.diff = (round6(v) - printed).abs();
            row.pass = row.diff < 1e-12;
            row
        })
        .collect()
}

fn psi_checks() -> Result<Vec<CheckRow>> {
    psi_grid()
        .into_iter()
        .map(|z| {
            let r = psi_integral(z)?;
            Ok(CheckRow::new(format!("psi_integral({z:.6})"), r.value, euler_gamma() + digamma(z)?, 1e-10))
        })
        .collect()
}

fn polylog_checks() -> Result<Vec<CheckRow>> {
    let mut out = Vec::new();
    for n in 2..=4u32 {
        for z in [-1.0, -0.5, 0.3, 0.9, 1.0] {
            let r = polylog_integral(n, z)?;
            out.push(CheckRow::new(format!("polylog_integral({n}, {z})"), r.value, polylog(n, z)?, 1e-9));
        }
    }
    for n in 2..=4u32 {
        for z in [0.25, 0.5, 1.0] {
            let r = polylog_recursive_integral(n, z)?;
            out.push(CheckRow::new(
                format!("polylog_recursive_integral({n}, {z})"),
                r.value,
                polylog(n, z)?,
                1e-9,
            ));
        }
    }
    let whole = dilog_sum_integral();
    let z2 = zeta_int(2)?;
    out.push(CheckRow::new("dilog_sum_integral", whole.value, z2, 1e-10));
    let (lo, hi) = dilog_sum_integral_halves();
    out.push(CheckRow::new("dilog_sum_integral halves", lo.value + hi.value, whole.value, 1e-12));
    out.push(CheckRow::new(
        "dilog_sum_integral vs polylog_integral(2, 1)",
        whole.value,
        polylog_integral(2, 1.0)?.value,
        2e-9,
    ));
    Ok(out)
}

fn clausen_checks() -> Result<Vec<CheckRow>> {
    clausen_grid()
        .into_iter()
        .map(|t| {
            let r = clausen_from_dilog(t)?;
            Ok(CheckRow::new(format!("clausen_from_dilog({t:.6})"), r.value, clausen2(t), 1e-10))
        })
        .collect()
}

/// Series value of G1, the log-sine integral and the arcsin² integral,
/// compared pairwise.
fn g1_triangle() -> Result<Vec<CheckRow>> {
    let series = catalog::verify("G1", None)?;
    if !series.lhs.is_finite() {
        return Err(Error::NoConvergence(format!("G1 series: {:?}", series.note)));
    }
    let ls = logsine_integral().value;
    let asq = arcsin_sq_integral().value;
    Ok(vec![
        CheckRow::new("G1 series vs logsine_integral", series.lhs, ls, 3e-9),
        CheckRow::new("G1 series vs arcsin_sq_integral", series.lhs, asq, 3e-9),
        CheckRow::new("logsine_integral vs arcsin_sq_integral", ls, asq, 3e-9),
    ])
}

fn mellin_forward_checks() -> Result<Vec<CheckRow>> {
    let mut out = Vec::new();
    for k in 0..=4u32 {
        for z in [0.5, 1.0, 2.0] {
            let v = mellin_forward_example(k, z)?;
            let want = (1..=k).map(f64::from).product::<f64>() / z.powi(k as i32 + 1);
            out.push(CheckRow::relative(format!("mellin_forward({k}, {z}) [relative]"), v, want, 1e-10));
        }
    }
    Ok(out)
}

fn mellin_inverse_checks() -> Result<Vec<CheckRow>> {
    let spec = ContourSpec::inverse_default();
    let mut out = Vec::new();
    for x in [2.0, E, 10.0] {
        for k in 0..=2u32 {
            let r = inverse_mellin_example(k, x, &spec)?;
            out.push(CheckRow::new(
                format!("inverse_mellin({k}, {x:.6})"),
                r.value,
                x.ln().powi(k as i32),
                1e-4,
            ));
        }
    }
    Ok(out)
}

fn factorization_checks() -> Result<Vec<CheckRow>> {
    let spec = ContourSpec::factorization_default();
    let mut out = Vec::new();
    for (i, (a, p, c1, c2)) in factorization_test_points().into_iter().enumerate() {
        let r = factorization_check(a, p, c1, c2, &spec)?;
        let mut row = CheckRow::new(format!("factorization point {} [|lhs - rhs|]", i + 1), r.rhs.norm(), r.lhs.norm(), 1e-3);
        row.diff = r.abs_diff;
        row.pass = r.abs_diff <= 1e-3;
        out.push(row);
    }
    Ok(out)
}

/// Aligned text table of check rows.
pub fn format_checks(rows: &[CheckRow]) -> String {
    let width = rows.iter().map(|r| r.name.len()).max().unwrap_or(4).max(4);
    let mut out = format!(
        "{:<width$}  {:>22}  {:>22}  {:>10}  {:>8}  pass\n",
        "name", "value", "reference", "diff", "tol"
    );
    for r in rows {
        out.push_str(&format!(
            "{:<width$}  {:>22.15}  {:>22.15}  {:>10.2e}  {:>8.0e}  {}\n",
            r.name,
            r.value,
            r.reference,
            r.diff,
            r.tol,
            if r.pass { "ok" } else { "FAIL" }
        ));
    }
    out
}
