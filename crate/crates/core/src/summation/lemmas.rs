use crate::error::{domain, Result};
use crate::specfun::{digamma, gamma_ratio_log, polygamma, trigamma};

/// `Σ_{n≥1} 1/((n+a)(n+b)) = [ψ(1+b) − ψ(1+a)]/(b − a)`, and `ψ′(1+a)` at
/// `a = b`.
///
/// Integer separations up to 64 use the telescoped finite sum
/// `Σ_{j=1}^{b−a} 1/(a+j) / (b−a)`, and nearly equal arguments a Taylor
/// expansion, so the difference quotient never cancels badly.
pub fn lemma_partial_fraction(a: f64, b: f64) -> Result<f64> {
    if !(a >= 0.0 && b >= 0.0) || !a.is_finite() || !b.is_finite() {
        return domain("lemma_partial_fraction", format!("requires a, b >= 0, got ({a}, {b})"));
    }
    let (a, b) = if a <= b { (a, b) } else { (b, a) };
    let d = b - a;
    if d == 0.0 {
        return trigamma(1.0 + a);
    }
    if d.fract() == 0.0 && d <= 64.0 {
        let m = d as u32;
        let s: f64 = (1..=m).rev().map(|j| 1.0 / (a + j as f64)).sum();
        return Ok(s / d);
    }
    if d < 1e-3 {
        // [ψ(1+a+d) − ψ(1+a)]/d = Σ ψ⁽ʲ⁾(1+a) d^{j−1}/j!
        let x = 1.0 + a;
        let mut s = 0.0;
        let mut coef = 1.0;
        for j in 1..=6u32 {
            coef /= j as f64;
            s += polygamma(j, x)? * coef * d.powi(j as i32 - 1);
        }
        return Ok(s);
    }
    Ok((digamma(1.0 + b)? - digamma(1.0 + a)?) / d)
}

/// `Σ_{n≥1} Γ(n+k)/Γ(1+n+2k) = Γ(k)/Γ(1+2k)` for integer `k ≥ 1`.
pub fn lemma_gamma_ratio(k: u64) -> Result<f64> {
    if k == 0 {
        return domain("lemma_gamma_ratio", "requires k >= 1");
    }
    lemma_gamma_ratio_real(k as f64)
}

/// [`lemma_gamma_ratio`] continued to real `k > 0`.
pub fn lemma_gamma_ratio_real(k: f64) -> Result<f64> {
    Ok(gamma_ratio_log(k, 1.0 + 2.0 * k)?.exp())
}
