use super::bernoulli::BERNOULLI_2K;
use crate::error::{domain, Result};

// Below this the argument is shifted up with the recurrence; at 12 the
// asymptotic series through B_14 is accurate to ~1e-18.
const SHIFT: f64 = 12.0;
const ASYMPTOTIC_TERMS: usize = 7;

/// Digamma ψ(x) for x > 0.
pub fn digamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return domain("digamma", format!("argument must be positive and finite, got {x}"));
    }
    let mut y = x;
    let mut shift = 0.0;
    while y < SHIFT {
        shift += 1.0 / y;
        y += 1.0;
    }
    let inv2 = 1.0 / (y * y);
    let mut series = 0.0;
    let mut pow = inv2;
    for (k, b) in BERNOULLI_2K.iter().take(ASYMPTOTIC_TERMS).enumerate() {
        series += b / (2.0 * (k + 1) as f64) * pow;
        pow *= inv2;
    }
    Ok((y.ln() - 0.5 / y - series) - shift)
}

/// Trigamma ψ′(x) for x > 0.
pub fn trigamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return domain("trigamma", format!("argument must be positive and finite, got {x}"));
    }
    polygamma_unchecked(1, x)
}

/// Polygamma ψ⁽ⁿ⁾(x) for n ≥ 1 and x > 0.
pub fn polygamma(n: u32, x: f64) -> Result<f64> {
    if n == 0 {
        return digamma(x);
    }
    if n > 20 {
        return domain("polygamma", format!("order {n} not supported (max 20)"));
    }
    if !(x > 0.0) || !x.is_finite() {
        return domain("polygamma", format!("argument must be positive and finite, got {x}"));
    }
    polygamma_unchecked(n, x)
}

fn factorial(n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

fn polygamma_unchecked(n: u32, x: f64) -> Result<f64> {
    let threshold = SHIFT + n as f64;
    let np1 = (n + 1) as i32;
    let mut y = x;
    // Σ 1/(x+j)^{n+1}
    let mut shift = 0.0;
    while y < threshold {
        shift += y.powi(-np1);
        y += 1.0;
    }
    let nf = factorial(n);
    let n1f = factorial(n - 1);
    let inv = 1.0 / y;
    // (n-1)!/y^n + n!/(2 y^{n+1}) + Σ B_2k (2k+n-1)!/((2k)! y^{2k+n})
    let mut asym = n1f * inv.powi(n as i32) + nf * 0.5 * inv.powi(np1);
    let inv2 = inv * inv;
    let mut pow = inv.powi(n as i32) * inv2;
    // (2k+n-1)!/(2k)! as a running ratio
    let mut ratio_k = factorial(n + 1) / 2.0;
    for (k, b) in BERNOULLI_2K.iter().take(ASYMPTOTIC_TERMS).enumerate() {
        let k = (k + 1) as f64;
        asym += b * ratio_k * pow;
        pow *= inv2;
        // advance (2k+n-1)!/(2k)! -> (2k+n+1)!/(2k+2)!
        let nn = n as f64;
        ratio_k *= (2.0 * k + nn) * (2.0 * k + nn + 1.0) / ((2.0 * k + 1.0) * (2.0 * k + 2.0));
    }
    let total = asym + nf * shift;
    Ok(if n % 2 == 1 { total } else { -total })
}
