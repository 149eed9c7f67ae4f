use super::{accumulation_bound, is_exponential, SumResult, Strategy, Summand1D, TailClass};
use crate::accel::{cvz_alternating, CompensatedSum};
use crate::error::{Error, Result};

const CVZ_LOW: usize = 40;
const CVZ_HIGH: usize = 56;

/// Evaluates `s` by a method independent of [`super::sum_1d`], for
/// validating its error claims.
///
/// Positive polynomial-log series go through the van Wijngaarden transform
/// to an alternating series that is then accelerated (Cohen–Villegas–
/// Zagier); alternating series are accelerated directly; exponential series
/// are summed exhaustively; custom-tail series are re-run at a doubled
/// cutoff. The error estimate is the disagreement between two acceleration
/// orders plus a rounding floor.
pub fn sum_1d_crosscheck(s: &Summand1D) -> Result<SumResult> {
    if is_exponential(s.tail_class()) {
        return exhaustive(s);
    }
    match s.tail_class() {
        TailClass::PolyLog { .. } => van_wijngaarden(s),
        TailClass::Alternating(_) => alternating(s),
        TailClass::Custom { .. } => {
            let a = super::sum_1d_fixed(s, 50_000)?;
            let b = super::sum_1d_fixed(s, 100_000)?;
            Ok(SumResult {
                value: b.value,
                error_estimate: (a.value - b.value).abs() + b.error_estimate,
                terms_used: a.terms_used + b.terms_used,
                strategy: Strategy::DoubledCutoff,
            })
        }
        TailClass::Exponential => unreachable!(),
    }
}

fn checked(value: f64, error: f64, terms: u64, strategy: Strategy) -> Result<SumResult> {
    if value.is_finite() && error.is_finite() {
        Ok(SumResult {
            value,
            error_estimate: error,
            terms_used: terms,
            strategy,
        })
    } else {
        Err(Error::NoConvergence(format!("{strategy} produced a non-finite value")))
    }
}

fn alternating(s: &Summand1D) -> Result<SumResult> {
    let n0 = s.start();
    let sign = if n0.is_multiple_of(2) { 1.0 } else { -1.0 };
    let a = |k: usize| s.smooth((n0 + k as u64) as f64);
    let lo = cvz_alternating(a, CVZ_LOW);
    let hi = cvz_alternating(a, CVZ_HIGH);
    let floor: f64 = 16.0 * f64::EPSILON * (0..CVZ_HIGH).map(|k| a(k).abs()).sum::<f64>();
    checked(sign * hi, (hi - lo).abs() + floor, CVZ_HIGH as u64, Strategy::Cvz)
}

/// `Σ_{n≥1} a(n) = Σ_{k≥1} (−1)^{k−1} b_k`, `b_k = Σ_j 2ʲ a(2ʲk)`.
fn van_wijngaarden(s: &Summand1D) -> Result<SumResult> {
    let mut head = CompensatedSum::new();
    for n in s.start()..1 {
        head.add(s.term(n));
    }
    let b = |k: usize| {
        let k = (k + 1) as f64;
        let mut acc = CompensatedSum::new();
        let mut p = 1.0;
        for j in 0..200 {
            let t = p * s.smooth(p * k);
            acc.add(t);
            if j >= 3 && t.abs() <= 1e-18 * acc.value().abs() {
                break;
            }
            p *= 2.0;
        }
        (acc.value(), acc.abs_sum(), acc.count())
    };
    let bs: Vec<(f64, f64, u64)> = (0..CVZ_HIGH).map(b).collect();
    let lo = cvz_alternating(|k| bs[k].0, CVZ_LOW);
    let hi = cvz_alternating(|k| bs[k].0, CVZ_HIGH);
    let abs_total: f64 = bs.iter().map(|x| x.1).sum();
    let terms: u64 = bs.iter().map(|x| x.2).sum::<u64>() + head.count();
    let error = (hi - lo).abs() + 16.0 * f64::EPSILON * abs_total + accumulation_bound(&head);
    checked(head.value() + hi, error, terms, Strategy::VanWijngaardenCvz)
}

fn exhaustive(s: &Summand1D) -> Result<SumResult> {
    let mut acc = CompensatedSum::new();
    let mut n = s.start();
    let mut small = 0;
    loop {
        let t = s.term(n);
        acc.add(t);
        if t == 0.0 || t.abs() < 1e-20 * acc.value().abs() {
            small += 1;
            if small >= 3 {
                break;
            }
        }
        if acc.count() > 100_000 {
            return Err(Error::NoConvergence("exhaustive sum did not settle".into()));
        }
        n += 1;
    }
    checked(acc.value(), accumulation_bound(&acc), acc.count(), Strategy::Exhaustive)
}
