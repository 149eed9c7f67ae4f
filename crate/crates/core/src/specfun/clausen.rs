use std::f64::consts::{PI, TAU};
use std::sync::OnceLock;

use super::zeta::zeta_em;
use crate::accel::cvz_alternating;

const CLAUSEN_TERMS: usize = 40;

/// `ζ(2k) / (k (2k+1) (2π)^{2k})`, the coefficients of
/// `Cl₂(θ) = θ − θ ln θ + Σ_k c_k θ^{2k+1}` on `|θ| < 2π`.
fn clausen_coefficients() -> &'static [f64; CLAUSEN_TERMS] {
    static COEFFS: OnceLock<[f64; CLAUSEN_TERMS]> = OnceLock::new();
    COEFFS.get_or_init(|| {
        let mut c = [0.0; CLAUSEN_TERMS];
        let mut pow = 1.0;
        for (i, slot) in c.iter_mut().enumerate() {
            let k = (i + 1) as f64;
            pow /= TAU * TAU;
            *slot = zeta_em(2 * (i as u32 + 1), 16) * pow / (k * (2.0 * k + 1.0));
        }
        c
    })
}

/// Clausen's function Cl₂(θ) = Σ sin(kθ)/k².
///
/// Reduced by oddness and 2π-periodicity to [0, π], then evaluated with the
/// log-split series, which converges like 4^{−k} at θ = π.
pub fn clausen2(theta: f64) -> f64 {
    if !theta.is_finite() {
        return f64::NAN;
    }
    if theta < 0.0 {
        return -clausen2(-theta);
    }
    let mut t = theta % TAU;
    let mut sign = 1.0;
    if t > PI {
        t = TAU - t;
        sign = -1.0;
    }
    if t == 0.0 {
        return 0.0;
    }
    let t2 = t * t;
    let c = clausen_coefficients();
    let mut poly = 0.0;
    for &ck in c.iter().rev() {
        poly = poly * t2 + ck;
    }
    sign * (t - t * t.ln() + t * t2 * poly)
}

/// Catalan's constant G = Σ (−1)^k/(2k+1)², by CVZ acceleration.
pub fn catalan() -> f64 {
    cvz_alternating(
        |k| {
            let d = 2.0 * k as f64 + 1.0;
            1.0 / (d * d)
        },
        48,
    )
}
