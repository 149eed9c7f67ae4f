//! Numeric evaluation of one- and two-dimensional series with error
//! estimates, and the two reduction lemmas for double sums.

mod crosscheck;
mod double;
mod lemmas;
mod tail;

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::accel::CompensatedSum;
use crate::error::{domain, Error, Result};

pub use crosscheck::sum_1d_crosscheck;
pub use double::{sum_2d, sum_2d_with, Summand2D};
pub use lemmas::{lemma_gamma_ratio, lemma_gamma_ratio_real, lemma_partial_fraction};
pub use tail::power_log_tail;

/// A smooth real function, shared between threads.
pub type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// How the terms of a series behave for large `n`; selects the strategy.
#[derive(Clone)]
pub enum TailClass {
    /// `|term(n)| ~ n^{−power} logˡ n`, with `l = log_power` (0, 1 or 2).
    PolyLog { power: u32, log_power: u32 },
    /// `term(n) = (−1)ⁿ g(n)` with `g` in the inner class.
    Alternating(Box<TailClass>),
    /// Geometric or faster decay.
    Exponential,
    /// A user-supplied tail `Σ_{n>N} term(n)`, accurate to `O(N^{−order})`.
    Custom { tail: RealFn, order: f64 },
}

impl fmt::Debug for TailClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TailClass::PolyLog { power, log_power } => write!(f, "PolyLog(p={power}, log^{log_power})"),
            TailClass::Alternating(inner) => write!(f, "Alternating({inner:?})"),
            TailClass::Exponential => write!(f, "Exponential"),
            TailClass::Custom { order, .. } => write!(f, "Custom(order={order})"),
        }
    }
}

impl TailClass {
    pub fn poly(power: u32, log_power: u32) -> Self {
        TailClass::PolyLog { power, log_power }
    }

    pub fn alternating(inner: TailClass) -> Self {
        TailClass::Alternating(Box::new(inner))
    }
}

/// A one-dimensional series `Σ_{n≥n₀} term(n)`.
///
/// `g` is a smooth continuation of the unsigned summand to real arguments
/// `x ≥ n₀`; for the alternating class the term is `(−1)ⁿ g(n)`.
#[derive(Clone)]
pub struct Summand1D {
    g: RealFn,
    start: u64,
    tail: TailClass,
}

impl fmt::Debug for Summand1D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Summand1D")
            .field("start", &self.start)
            .field("tail", &self.tail)
            .finish_non_exhaustive()
    }
}

impl Summand1D {
    pub fn new<G>(start: u64, tail: TailClass, g: G) -> Self
    where
        G: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Summand1D {
            g: Arc::new(g),
            start,
            tail,
        }
    }

    pub fn start(&self) -> u64 {
        self.start
    }

    pub fn tail_class(&self) -> &TailClass {
        &self.tail
    }

    pub fn is_alternating(&self) -> bool {
        matches!(self.tail, TailClass::Alternating(_))
    }

    /// The smooth unsigned continuation.
    pub fn smooth(&self, x: f64) -> f64 {
        (self.g)(x)
    }

    /// The n-th term of the series.
    pub fn term(&self, n: u64) -> f64 {
        let v = (self.g)(n as f64);
        if self.is_alternating() && n % 2 == 1 {
            -v
        } else {
            v
        }
    }

    /// Spot check that the declared tail class matches the actual decay:
    /// `|g(2N)/g(N)|` against `2^{−p}` within a factor 4, at `N = 10³, 10⁴`.
    pub fn check_tail_class(&self) -> Result<()> {
        let mut class = &self.tail;
        while let TailClass::Alternating(inner) = class {
            class = inner;
        }
        for n in [1e3, 1e4] {
            let (a, b) = (self.smooth(n).abs(), self.smooth(2.0 * n).abs());
            match class {
                TailClass::PolyLog { power, .. } => {
                    let want = 2f64.powi(-(*power as i32));
                    let ratio = b / a;
                    if !(ratio <= 4.0 * want && ratio >= want / 4.0) {
                        return Err(Error::NoConvergence(format!(
                            "declared n^-{power} decay but |g(2N)/g(N)| = {ratio:.3e} at N = {n}"
                        )));
                    }
                }
                TailClass::Exponential => {
                    if !(b <= 1e-3 * a || a < 1e-250) {
                        return Err(Error::NoConvergence(format!("declared exponential decay but |g(2N)/g(N)| = {:.3e}", b / a)));
                    }
                }
                TailClass::Custom { .. } | TailClass::Alternating(_) => {}
            }
        }
        Ok(())
    }
}

/// How a [`SumResult`] was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    DirectEulerMaclaurin,
    PairedEulerMaclaurin,
    ExponentialCutoff,
    CustomTail,
    VanWijngaardenCvz,
    Cvz,
    Exhaustive,
    DoubledCutoff,
    ReducedInner,
    NestedRows,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Strategy::DirectEulerMaclaurin => "direct+euler-maclaurin",
            Strategy::PairedEulerMaclaurin => "paired+euler-maclaurin",
            Strategy::ExponentialCutoff => "exponential-cutoff",
            Strategy::CustomTail => "custom-tail",
            Strategy::VanWijngaardenCvz => "van-wijngaarden+cvz",
            Strategy::Cvz => "cvz",
            Strategy::Exhaustive => "exhaustive",
            Strategy::DoubledCutoff => "doubled-cutoff",
            Strategy::ReducedInner => "reduced-inner",
            Strategy::NestedRows => "nested-rows",
        };
        f.write_str(s)
    }
}

/// Value of a series with an error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SumResult {
    pub value: f64,
    pub error_estimate: f64,
    pub terms_used: u64,
    pub strategy: Strategy,
}

/// Cutoffs and budgets for the engine.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SumConfig {
    /// Direct terms before the tail correction in one-dimensional sums.
    pub cutoff: u64,
    /// Budget of terms; the cutoff is raised up to this before giving up.
    pub max_terms: u64,
    /// Direct terms per row in unreduced double sums.
    pub row_cutoff: u64,
    /// Rows summed directly in unreduced double sums.
    pub outer_cutoff: u64,
}

impl Default for SumConfig {
    fn default() -> Self {
        SumConfig {
            cutoff: 1_000_000,
            max_terms: 10_000_000,
            row_cutoff: 64,
            outer_cutoff: 10_000,
        }
    }
}

/// Rounding bound for a compensated partial sum whose terms each carry a
/// few ulps of evaluation error.
pub(crate) fn accumulation_bound(s: &CompensatedSum) -> f64 {
    f64::EPSILON * (2.0 * s.value().abs() + 8.0 * s.abs_sum())
}

/// Sums `s` to absolute accuracy `target` with the default configuration.
pub fn sum_1d(s: &Summand1D, target: f64) -> Result<SumResult> {
    sum_1d_with(s, target, &SumConfig::default())
}

/// Sums `s` to absolute accuracy `target`.
///
/// Polynomial-log classes sum directly to the cutoff and add an
/// Euler–Maclaurin tail; alternating classes pair terms first; exponential
/// classes sum until the terms drop below `target/10`. If the estimate
/// misses the target the cutoff is raised fourfold, up to the term budget.
pub fn sum_1d_with(s: &Summand1D, target: f64, cfg: &SumConfig) -> Result<SumResult> {
    if !(target >= 1e-12) {
        return domain("sum_1d", format!("target error must be >= 1e-12, got {target:e}"));
    }
    if is_exponential(&s.tail) {
        return sum_exponential(s, target, cfg.max_terms);
    }
    let mut n = cfg.cutoff.max(s.start + 64);
    loop {
        let r = sum_1d_fixed(s, n)?;
        if r.error_estimate <= target {
            return Ok(r);
        }
        if n.saturating_mul(4) > cfg.max_terms {
            return Err(Error::NoConvergence(format!(
                "error estimate {:.3e} above target {target:.3e} with {} terms",
                r.error_estimate, r.terms_used
            )));
        }
        n *= 4;
    }
}

pub(crate) fn is_exponential(t: &TailClass) -> bool {
    match t {
        TailClass::Exponential => true,
        TailClass::Alternating(inner) => is_exponential(inner),
        _ => false,
    }
}

/// Direct sum of `term(start..=cutoff)`.
fn partial(s: &Summand1D, cutoff: u64) -> CompensatedSum {
    let mut acc = CompensatedSum::new();
    for n in s.start..=cutoff {
        acc.add(s.term(n));
    }
    acc
}

/// Sum with a fixed direct cutoff `n` (rounded up to even for alternating
/// series) plus the tail of the declared class. Not valid for the
/// exponential class, which has no cutoff.
pub fn sum_1d_fixed(s: &Summand1D, cutoff: u64) -> Result<SumResult> {
    let g = |x: f64| (s.g)(x);
    match &s.tail {
        TailClass::PolyLog { power, .. } => {
            let acc = partial(s, cutoff);
            let t = tail::em_tail(&g, cutoff as f64, *power as f64);
            finish(acc, t.value, t.error, Strategy::DirectEulerMaclaurin)
        }
        TailClass::Alternating(inner) => {
            let power = match inner.as_ref() {
                TailClass::PolyLog { power, .. } => *power as f64,
                other => return domain("sum_1d", format!("alternating tail over {other:?} has no pairing rule")),
            };
            let cutoff = cutoff + cutoff % 2;
            let acc = partial(s, cutoff);
            let t = tail::alternating_tail(&g, cutoff as f64, power);
            finish(acc, t.value, t.error, Strategy::PairedEulerMaclaurin)
        }
        TailClass::Custom { tail, order } => {
            let acc = partial(s, cutoff);
            let t = tail(cutoff as f64);
            // the tail is exact to O(N^-order); compare with the doubled cutoff
            let mut acc2 = acc;
            for n in cutoff + 1..=2 * cutoff {
                acc2.add(s.term(n));
            }
            let t2 = tail(2.0 * cutoff as f64);
            let v1 = acc.value() + t;
            let v2 = acc2.value() + t2;
            let diff = (v2 - v1).abs();
            let extra = diff / (2f64.powf(*order) - 1.0).max(1.0);
            finish(acc2, t2, extra, Strategy::CustomTail)
        }
        TailClass::Exponential => domain("sum_1d_fixed", "exponential series have no fixed cutoff"),
    }
}

fn finish(acc: CompensatedSum, tail: f64, tail_err: f64, strategy: Strategy) -> Result<SumResult> {
    let value = acc.value() + tail;
    let error_estimate = tail_err + accumulation_bound(&acc);
    if !value.is_finite() || !error_estimate.is_finite() {
        return Err(Error::NoConvergence("non-finite partial sum or tail".into()));
    }
    Ok(SumResult {
        value,
        error_estimate,
        terms_used: acc.count(),
        strategy,
    })
}

fn sum_exponential(s: &Summand1D, target: f64, max_terms: u64) -> Result<SumResult> {
    let mut acc = CompensatedSum::new();
    let mut prev = f64::NAN;
    let mut n = s.start;
    loop {
        let t = s.term(n);
        acc.add(t);
        let ratio = (t / prev).abs();
        if t == 0.0 {
            return finish(acc, 0.0, 0.0, Strategy::ExponentialCutoff);
        }
        if t.abs() < target / 10.0 && ratio < 0.9 {
            // geometric bound on the rest
            let rest = t.abs() * ratio / (1.0 - ratio);
            return finish(acc, 0.0, rest, Strategy::ExponentialCutoff);
        }
        if acc.count() >= max_terms {
            return Err(Error::NoConvergence(format!("exponential series not below target after {max_terms} terms")));
        }
        prev = t;
        n += 1;
    }
}
