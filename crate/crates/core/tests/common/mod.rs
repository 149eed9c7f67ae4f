#![allow(dead_code, clippy::neg_cmp_op_on_partial_ord)]

use eulersum::catalog::{build_catalog, theorem_rows, Lhs};
use eulersum::summation::{sum_1d_crosscheck, sum_1d_fixed, sum_1d_with, SumConfig, Summand1D, TailClass};

/// Every one-dimensional series in the catalog: 1-D entries, the exact
/// inner reductions of the 2-D entries, and the theorem rows.
pub fn one_dim_summands() -> Vec<(String, Summand1D)> {
    let mut out = Vec::new();
    for e in build_catalog().into_iter().chain(theorem_rows()) {
        match e.lhs {
            Lhs::One(s) => out.push((e.id, s)),
            Lhs::Two(s) => {
                if let Some(r) = s.reduction() {
                    out.push((format!("{}.reduced", e.id), r.clone()));
                }
            }
        }
    }
    out
}

pub fn is_exponential(s: &Summand1D) -> bool {
    match s.tail_class() {
        TailClass::Exponential => true,
        TailClass::Alternating(inner) => matches!(**inner, TailClass::Exponential),
        _ => false,
    }
}

/// `|S(4N) − S(N)|` against twice the error claimed at `N`, for
/// `N ∈ {10³, 10⁴, 10⁵}`. Returns a description of the first failure.
pub fn tail_soundness(id: &str, s: &Summand1D) -> Result<(), String> {
    for n in [1_000u64, 10_000, 100_000] {
        let a = sum_1d_fixed(s, n).map_err(|e| format!("{id} N={n}: {e}"))?;
        let b = sum_1d_fixed(s, 4 * n).map_err(|e| format!("{id} N={}: {e}", 4 * n))?;
        let d = (b.value - a.value).abs();
        if !(d <= 2.0 * a.error_estimate) {
            return Err(format!("{id} N={n}: |S(4N)-S(N)| = {d:.3e} > 2 x {:.3e}", a.error_estimate));
        }
    }
    Ok(())
}

/// The main engine against the independent cross-check strategy.
pub fn strategy_agreement(id: &str, s: &Summand1D) -> Result<(), String> {
    let main = sum_1d_with(s, 1e-11, &SumConfig::default()).map_err(|e| format!("{id} sum_1d: {e}"))?;
    let alt = sum_1d_crosscheck(s).map_err(|e| format!("{id} crosscheck: {e}"))?;
    let d = (main.value - alt.value).abs();
    let bound = main.error_estimate + alt.error_estimate;
    if d <= bound {
        Ok(())
    } else {
        Err(format!("{id}: {d:.3e} > {bound:.3e} ({} vs {})", main.strategy, alt.strategy))
    }
}
