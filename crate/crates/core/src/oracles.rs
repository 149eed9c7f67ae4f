//! Independent evaluations of the integral representations behind the
//! identities, used to cross-check `specfun` and the catalog.
//!
//! Everything here goes through quadrature (or, for Clausen, a differently
//! organised series) so agreement with the direct evaluators is meaningful.

use std::f64::consts::{FRAC_PI_3, TAU};

use num_complex::Complex64;

use crate::accel::CompensatedSum;
use crate::error::{domain, Result};
use crate::quadrature::tanh_sinh;
pub use crate::quadrature::QuadratureResult;
use crate::specfun::polylog;

const REL_TOL: f64 = 1e-14;

// Below this distance from t = 1 the ψ integrand is replaced by its limit.
const PSI_LIMIT_GAP: f64 = 1e-8;

/// `γ + ψ(z) = ∫₀¹ (1 − t^{z−1})/(1 − t) dt`.
pub fn psi_integral(z: f64) -> Result<QuadratureResult> {
    if !(z > 0.0) || !z.is_finite() {
        return domain("psi_integral", format!("requires z > 0, got {z}"));
    }
    let a = z - 1.0;
    let f = |t: f64, _from0: f64, gap: f64| {
        if gap < PSI_LIMIT_GAP {
            return a;
        }
        let ln_t = if t > 0.5 { (-gap).ln_1p() } else { t.ln() };
        -(a * ln_t).exp_m1() / gap
    };
    Ok(tanh_sinh(f, 0.0, 1.0, REL_TOL))
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

/// `Liₙ(z) = ((−1)^{n−1}/(n−2)!) ∫₀¹ logⁿ⁻²(t) log(1 − tz)/t dt` for
/// `n ≥ 2`, `|z| ≤ 1`.
pub fn polylog_integral(n: u32, z: f64) -> Result<QuadratureResult> {
    if n < 2 {
        return domain("polylog_integral", format!("order must be >= 2, got {n}"));
    }
    if !(z.abs() <= 1.0) {
        return domain("polylog_integral", format!("requires |z| <= 1, got {z}"));
    }
    let m = (n - 2) as i32;
    let f = |t: f64, _from0: f64, gap: f64| {
        let ln_t = if t > 0.5 { (-gap).ln_1p() } else { t.ln() };
        // 1 − tz = (1 − t) + t(1 − z), exact as t → 1 when z = 1
        let one_minus_tz = gap + t * (1.0 - z);
        let log_term = if t * z.abs() < 0.5 { (-t * z).ln_1p() } else { one_minus_tz.ln() };
        ln_t.powi(m) * log_term / t
    };
    let mut r = tanh_sinh(f, 0.0, 1.0, REL_TOL);
    let scale = if n.is_multiple_of(2) { -1.0 } else { 1.0 } / factorial(n - 2);
    r.value *= scale;
    r.error_estimate *= scale.abs();
    Ok(r)
}

/// `Liₙ(z) = ∫₀^z Li_{n−1}(t)/t dt` for `n ≥ 1`, `0 < z ≤ 1`, with
/// `Li₀(t) = t/(1 − t)`.
pub fn polylog_recursive_integral(n: u32, z: f64) -> Result<QuadratureResult> {
    if n == 0 {
        return domain("polylog_recursive_integral", "order must be >= 1");
    }
    if !(z > 0.0 && z <= 1.0) {
        return domain("polylog_recursive_integral", format!("requires 0 < z <= 1, got {z}"));
    }
    if n == 1 && z == 1.0 {
        return domain("polylog_recursive_integral", "Li_1 diverges at z = 1");
    }
    let f = |t: f64, _from0: f64, gap: f64| {
        // 1 − t, measured from the upper limit z
        let one_minus_t = (1.0 - z) + gap;
        match n {
            1 => 1.0 / one_minus_t,
            2 => {
                if t < 0.5 {
                    -(-t).ln_1p() / t
                } else {
                    -one_minus_t.ln() / t
                }
            }
            _ => polylog(n - 1, t).unwrap_or(f64::NAN) / t,
        }
    };
    Ok(tanh_sinh(f, 0.0, z, REL_TOL))
}

fn neg_log1m_over_t(t: f64, gap: f64) -> f64 {
    if t < 0.5 {
        -(-t).ln_1p() / t
    } else {
        -gap.ln() / t
    }
}

/// `−∫₀¹ log(1 − t)/t dt = ζ(2)`.
pub fn dilog_sum_integral() -> QuadratureResult {
    tanh_sinh(|t, _, gap| neg_log1m_over_t(t, gap), 0.0, 1.0, REL_TOL)
}

/// The same integral split at `t = 1/2`, returned as the two halves.
pub fn dilog_sum_integral_halves() -> (QuadratureResult, QuadratureResult) {
    let lo = tanh_sinh(|t, _, _| -(-t).ln_1p() / t, 0.0, 0.5, REL_TOL);
    let hi = tanh_sinh(|t, _, gap| -gap.ln() / t, 0.5, 1.0, REL_TOL);
    (lo, hi)
}

/// `−4∫₀^{π/3} u log(2 sin(u/2)) du`.
pub fn logsine_integral() -> QuadratureResult {
    let mut r = tanh_sinh(|u, _, _| u * (2.0 * (0.5 * u).sin()).ln(), 0.0, FRAC_PI_3, REL_TOL);
    r.value *= -4.0;
    r.error_estimate *= 4.0;
    r
}

/// `4∫₀¹ arcsin²(√t/2)/t dt`, the log-sine integral after `√t/2 = sin(u/2)`.
pub fn arcsin_sq_integral() -> QuadratureResult {
    let f = |t: f64, _: f64, _: f64| {
        let a = (0.5 * t.sqrt()).asin();
        a * a / t
    };
    let mut r = tanh_sinh(f, 0.0, 1.0, REL_TOL);
    r.value *= 4.0;
    r.error_estimate *= 4.0;
    r
}

const CLAUSEN_MIN_CUTOFF: u32 = 2000;
const CLAUSEN_ORDER: usize = 6;

/// `Cl₂(θ) = Im Li₂(e^{iθ}) = Σ sin(kθ)/k²` for `θ ∈ (0, 2π)`.
///
/// The first terms are summed directly; the rest comes from repeated
/// summation by parts, `Σ_{k>N} qᵏ f(k) = Σ_j qᴺ⁺¹ (q/(1−q))ʲ Δʲf(N+1)/(1−q)`,
/// whose remainder is bounded by `|1−q|⁻ᵐ |Δᵐ⁻¹f(N+1)|` because `1/k²` is
/// completely monotone.
pub fn clausen_from_dilog(theta: f64) -> Result<QuadratureResult> {
    if !(theta > 0.0 && theta < TAU) {
        return domain("clausen_from_dilog", format!("requires 0 < theta < 2pi, got {theta}"));
    }
    let q = Complex64::from_polar(1.0, theta);
    let gap = (1.0 - q).norm();
    // each summation-by-parts step gains a factor ~1/(N|1−q|), while the
    // differences lose ~2ʲ ulps, so N grows as θ approaches 0 or 2π
    let n = CLAUSEN_MIN_CUTOFF.max((400.0 / gap).ceil() as u32);
    let mut head = CompensatedSum::new();
    for k in 1..=n {
        let k = f64::from(k);
        head.add((k * theta).sin() / (k * k));
    }
    let r = q / (1.0 - q);
    // forward differences of f(k) = 1/k² at k = N+1
    let vals: Vec<f64> = (0..=CLAUSEN_ORDER)
        .map(|j| {
            let k = f64::from(n + 1) + j as f64;
            1.0 / (k * k)
        })
        .collect();
    let mut diffs = vals.clone();
    let mut delta = Vec::with_capacity(CLAUSEN_ORDER);
    for _ in 0..CLAUSEN_ORDER {
        delta.push(diffs[0]);
        diffs = diffs.windows(2).map(|w| w[1] - w[0]).collect();
    }
    let lead = q.powu(n + 1) / (1.0 - q);
    let mut tail = Complex64::new(0.0, 0.0);
    let mut rj = Complex64::new(1.0, 0.0);
    for d in &delta {
        tail += lead * rj * *d;
        rj *= r;
    }
    let inv = 1.0 / gap;
    let remainder = inv.powi(CLAUSEN_ORDER as i32) * delta[CLAUSEN_ORDER - 1].abs();
    let value = head.value() + tail.im;
    let difference_rounding: f64 = (0..CLAUSEN_ORDER)
        .map(|j| (2.0 * inv).powi(j as i32) * inv * f64::EPSILON * vals[0])
        .sum();
    let rounding = 8.0 * f64::EPSILON * head.abs_sum() + 4.0 * difference_rounding;
    Ok(QuadratureResult {
        value,
        error_estimate: remainder + rounding,
        evaluations: n as usize + CLAUSEN_ORDER + 1,
    })
}

/// 50 points spread over `(0, 20]` for the ψ oracle.
pub fn psi_grid() -> Vec<f64> {
    (0..50).map(|i| 0.05 + 19.95 * (i as f64 / 49.0).powi(2)).collect()
}

/// 50 midpoints of an even partition of `(0, 2π)` for the Clausen oracle.
pub fn clausen_grid() -> Vec<f64> {
    (0..50).map(|i| TAU * (i as f64 + 0.5) / 50.0).collect()
}
