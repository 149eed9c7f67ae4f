use num_complex::Complex64;

use super::bernoulli::BERNOULLI_2K;
use crate::error::{domain, Result};

const SHIFT: f64 = 12.0;
const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;
const STIRLING_TERMS: usize = 7;

/// Stirling correction `Σ B_2k / (2k(2k−1) y^{2k−1})`, y ≥ 12.
fn stirling_correction(y: f64) -> f64 {
    let inv = 1.0 / y;
    let inv2 = inv * inv;
    let mut pow = inv;
    let mut s = 0.0;
    for (k, b) in BERNOULLI_2K.iter().take(STIRLING_TERMS).enumerate() {
        let k2 = 2.0 * (k + 1) as f64;
        s += b / (k2 * (k2 - 1.0)) * pow;
        pow *= inv2;
    }
    s
}

fn check_positive(op: &'static str, x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        domain(op, format!("argument must be positive and finite, got {x}"))
    }
}

/// log Γ(x) for x > 0.
pub fn ln_gamma(x: f64) -> Result<f64> {
    check_positive("ln_gamma", x)?;
    let mut y = x;
    let mut prod = 1.0;
    while y < SHIFT {
        prod *= y;
        y += 1.0;
    }
    Ok((y - 0.5) * y.ln() - y + HALF_LN_2PI + stirling_correction(y) - prod.ln())
}

/// `log(Γ(a)/Γ(b))` for a, b > 0, accurate when both arguments are large
/// and close together (no catastrophic cancellation between the two log Γ).
pub fn gamma_ratio_log(a: f64, b: f64) -> Result<f64> {
    check_positive("gamma_ratio_log", a)?;
    check_positive("gamma_ratio_log", b)?;
    if a == b {
        return Ok(0.0);
    }
    Ok(ratio_log_offset(a, b, a - b))
}

/// `log(Γ(a)/Γ(a+d))` with the offset given exactly, so the ratio stays
/// right when `a + d` rounds to `a`.
pub fn gamma_ratio_log_offset(a: f64, d: f64) -> Result<f64> {
    check_positive("gamma_ratio_log_offset", a)?;
    check_positive("gamma_ratio_log_offset", a + d)?;
    if d == 0.0 {
        return Ok(0.0);
    }
    Ok(ratio_log_offset(a, a + d, -d))
}

// log Γ(a) − log Γ(b) where d = a − b is exact.
fn ratio_log_offset(a: f64, b: f64, d: f64) -> f64 {
    let mut shift_log = 0.0;
    let (mut ya, mut yb) = (a, b);
    while ya.min(yb) < SHIFT {
        shift_log += (yb / ya).ln();
        ya += 1.0;
        yb += 1.0;
    }
    // (A−½)ln A − (B−½)ln B − (A−B) = d(ln A − 1) + (B−½) ln(1 + d/B)
    // ln(1 + d/B) = ln(A/B); ln_1p only helps while A and B are close
    let log_ab = if (d / yb).abs() < 0.5 { (d / yb).ln_1p() } else { (ya / yb).ln() };
    let main = d * (ya.ln() - 1.0) + (yb - 0.5) * log_ab;
    main + stirling_correction(ya) - stirling_correction(yb) + shift_log
}

/// log B(a, b) = log Γ(a) + log Γ(b) − log Γ(a+b), stable for large
/// arguments.
pub fn ln_beta(a: f64, b: f64) -> Result<f64> {
    check_positive("ln_beta", a)?;
    check_positive("ln_beta", b)?;
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    if lo < SHIFT {
        return Ok(ln_gamma(lo)? + gamma_ratio_log_offset(hi, lo)?);
    }
    let s = lo + hi;
    let main = (lo - 0.5) * -(hi / lo).ln_1p() + (hi - 0.5) * -(lo / hi).ln_1p() - 0.5 * s.ln();
    Ok(main + HALF_LN_2PI + stirling_correction(lo) + stirling_correction(hi) - stirling_correction(s))
}

/// log Γ(z) for Re z > 0.
///
/// Returns the branch that is real on the positive axis and continuous in
/// the right half-plane (the standard analytic log Γ), so that
/// `log Γ(z+1) = log Γ(z) + log z` holds exactly.
pub fn log_gamma_complex(z: Complex64) -> Result<Complex64> {
    if !(z.re > 0.0) || !z.re.is_finite() || !z.im.is_finite() {
        return domain("log_gamma_complex", format!("requires Re z > 0, got {z}"));
    }
    const R: f64 = 15.0;
    let mut y = z;
    let mut shift = Complex64::new(0.0, 0.0);
    while y.norm() < R {
        shift += y.ln();
        y += 1.0;
    }
    let inv = y.inv();
    let inv2 = inv * inv;
    let mut pow = inv;
    let mut corr = Complex64::new(0.0, 0.0);
    for (k, b) in BERNOULLI_2K.iter().take(STIRLING_TERMS).enumerate() {
        let k2 = 2.0 * (k + 1) as f64;
        corr += pow * (b / (k2 * (k2 - 1.0)));
        pow *= inv2;
    }
    Ok((y - 0.5) * y.ln() - y + HALF_LN_2PI + corr - shift)
}
