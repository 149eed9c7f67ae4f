use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use super::tail::em_tail;
use super::{accumulation_bound, sum_1d_with, SumConfig, SumResult, Strategy, Summand1D, TailClass};
use crate::accel::CompensatedSum;
use crate::error::{domain, Error, Result};

type TermFn = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

/// A double series `Σ_k Σ_n term(n, k)`, summed as rows in `n` for each
/// outer index `k`.
///
/// `term` must be smooth in both arguments for real `n ≥ n₀`, `k ≥ k₀`,
/// since row and outer tails are Euler–Maclaurin corrections. When the
/// inner sum is known in closed form, `reduced` holds it as a series in `k`
/// and the double sum is evaluated as that single series.
#[derive(Clone)]
pub struct Summand2D {
    term: TermFn,
    n_start: u64,
    k_start: u64,
    row_tail: TailClass,
    outer_tail: TailClass,
    reduced: Option<Summand1D>,
}

impl fmt::Debug for Summand2D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Summand2D")
            .field("n_start", &self.n_start)
            .field("k_start", &self.k_start)
            .field("row_tail", &self.row_tail)
            .field("outer_tail", &self.outer_tail)
            .field("reduced", &self.reduced.is_some())
            .finish_non_exhaustive()
    }
}

impl Summand2D {
    /// `row_tail` describes the decay in `n`, `outer_tail` the decay of the
    /// row sums in `k`; both must be polynomial-log classes.
    pub fn new<F>(n_start: u64, k_start: u64, row_tail: TailClass, outer_tail: TailClass, term: F) -> Self
    where
        F: Fn(f64, f64) -> f64 + Send + Sync + 'static,
    {
        Summand2D {
            term: Arc::new(term),
            n_start,
            k_start,
            row_tail,
            outer_tail,
            reduced: None,
        }
    }

    /// Attaches the exact inner sum as a series over the outer index.
    pub fn with_reduction(mut self, reduced: Summand1D) -> Self {
        self.reduced = Some(reduced);
        self
    }

    /// The same double sum with the reduction dropped, for checking the
    /// reduction against nested summation.
    pub fn without_reduction(&self) -> Self {
        Summand2D {
            reduced: None,
            ..self.clone()
        }
    }

    pub fn reduction(&self) -> Option<&Summand1D> {
        self.reduced.as_ref()
    }

    pub fn term(&self, n: u64, k: u64) -> f64 {
        (self.term)(n as f64, k as f64)
    }

    pub fn starts(&self) -> (u64, u64) {
        (self.n_start, self.k_start)
    }

    /// Row sum `Σ_n term(n, k)` at a (possibly non-integer) outer index,
    /// with its error estimate.
    pub fn row_sum(&self, k: f64, cutoff: u64) -> Result<(f64, f64)> {
        let power = poly_power(&self.row_tail)?;
        let mut acc = CompensatedSum::new();
        for n in self.n_start..=cutoff {
            acc.add((self.term)(n as f64, k));
        }
        let g = |x: f64| (self.term)(x, k);
        let t = em_tail(&g, cutoff as f64, power);
        let value = acc.value() + t.value;
        let error = t.error + accumulation_bound(&acc);
        Ok((value, error))
    }
}

fn poly_power(t: &TailClass) -> Result<f64> {
    match t {
        TailClass::PolyLog { power, .. } => Ok(*power as f64),
        other => domain("sum_2d", format!("row and outer tails must be polynomial-log, got {other:?}")),
    }
}

/// [`sum_2d_with`] under the default configuration.
pub fn sum_2d(s: &Summand2D, target: f64) -> Result<SumResult> {
    sum_2d_with(s, target, &SumConfig::default())
}

/// Sums a double series to absolute accuracy `target`.
///
/// With a reduction the exact inner sums are summed by
/// [`super::sum_1d_with`]. Otherwise rows `k₀..=K` are summed directly (in
/// parallel, reduced in order) each with its own tail, and an
/// Euler–Maclaurin tail over the row sums covers `k > K`.
pub fn sum_2d_with(s: &Summand2D, target: f64, cfg: &SumConfig) -> Result<SumResult> {
    if !(target >= 1e-12) {
        return domain("sum_2d", format!("target error must be >= 1e-12, got {target:e}"));
    }
    if let Some(r) = &s.reduced {
        let mut res = sum_1d_with(r, target, cfg)?;
        res.strategy = Strategy::ReducedInner;
        return Ok(res);
    }
    let outer_power = poly_power(&s.outer_tail)?;
    let row_cutoff = cfg.row_cutoff.max(s.n_start + 16);
    let outer_cutoff = cfg.outer_cutoff.max(s.k_start + 64);
    let rows: Vec<Result<(f64, f64)>> = (s.k_start..=outer_cutoff)
        .into_par_iter()
        .map(|k| s.row_sum(k as f64, row_cutoff))
        .collect();
    let mut acc = CompensatedSum::new();
    let mut row_err = 0.0;
    for r in rows {
        let (v, e) = r?;
        acc.add(v);
        row_err += e;
    }
    let outer = |k: f64| s.row_sum(k, row_cutoff).map(|r| r.0).unwrap_or(f64::NAN);
    let t = em_tail(&outer, outer_cutoff as f64, outer_power);
    let value = acc.value() + t.value;
    let error_estimate = row_err + t.error + accumulation_bound(&acc);
    let rows_used = outer_cutoff - s.k_start + 1;
    if !value.is_finite() || !error_estimate.is_finite() {
        return Err(Error::NoConvergence("double sum produced a non-finite value".into()));
    }
    if error_estimate > target {
        return Err(Error::NoConvergence(format!(
            "double sum error estimate {error_estimate:.3e} above target {target:.3e}"
        )));
    }
    Ok(SumResult {
        value,
        error_estimate,
        terms_used: rows_used * (row_cutoff - s.n_start + 1),
        strategy: Strategy::NestedRows,
    })
}
