use std::f64::consts::PI;

use super::bernoulli::BERNOULLI_2K;
use crate::error::{domain, Result};

// Direct terms below the Euler–Maclaurin cutoff, and number of Bernoulli
// corrections; the first neglected correction is ~1e-25 for m = 2.
const ZETA_CUTOFF: u32 = 16;
const ZETA_EM_TERMS: usize = 12;

/// Riemann ζ(m) for integer m ≥ 2.
///
/// Direct sum below a fixed cutoff plus the Euler–Maclaurin tail.
pub fn zeta_int(m: u32) -> Result<f64> {
    if m < 2 {
        return domain("zeta_int", format!("requires m >= 2, got {m}"));
    }
    Ok(zeta_em(m, ZETA_CUTOFF))
}

pub(crate) fn zeta_em(m: u32, cutoff: u32) -> f64 {
    let mf = m as f64;
    let n = cutoff as f64;
    let mut s = 0.0;
    for k in (1..cutoff).rev() {
        s += (k as f64).powf(-mf);
    }
    let nm = n.powf(-mf);
    let mut tail = n * nm / (mf - 1.0) + 0.5 * nm;
    // B_2j/(2j)! · m(m+1)…(m+2j−2) · N^{−m−2j+1}
    let mut rising = mf; // (m)_{2j-1} for j = 1
    let mut fact = 2.0; // (2j)!
    let mut pow = nm / n;
    for (j, b) in BERNOULLI_2K.iter().take(ZETA_EM_TERMS).enumerate() {
        let term = b / fact * rising * pow;
        tail += term;
        if term.abs() < 1e-18 * s {
            break;
        }
        let j2 = 2.0 * (j + 1) as f64;
        rising *= (mf + j2 - 1.0) * (mf + j2);
        fact *= (j2 + 1.0) * (j2 + 2.0);
        pow /= n * n;
    }
    s + tail
}

/// ζ(1 − 2j) = (−1)^j · 2 (2j−1)! ζ(2j) / (2π)^{2j}, j ≥ 1.
fn zeta_negative_odd(j: u32) -> f64 {
    let mut v = 2.0 * zeta_em(2 * j, ZETA_CUTOFF);
    for i in 1..2 * j {
        v *= i as f64 / (2.0 * PI);
    }
    v /= 2.0 * PI;
    if j % 2 == 1 {
        -v
    } else {
        v
    }
}

/// ζ(s) at an integer s ≠ 1 (negative arguments via the functional equation).
fn zeta_any_int(s: i64) -> f64 {
    match s {
        s if s >= 2 => zeta_em(s as u32, ZETA_CUTOFF),
        0 => -0.5,
        s if s < 0 && (-s) % 2 == 0 => 0.0,
        s if s < 0 => zeta_negative_odd(((1 - s) / 2) as u32),
        _ => unreachable!("ζ(1) is a pole"),
    }
}

/// Polylogarithm Liₙ(z) for integer n ≥ 1 and real |z| ≤ 1.
pub fn polylog(n: u32, z: f64) -> Result<f64> {
    if n == 0 {
        return domain("polylog", "order must be >= 1");
    }
    if !(z.abs() <= 1.0) {
        return domain("polylog", format!("requires |z| <= 1, got {z}"));
    }
    if n == 1 {
        if z == 1.0 {
            return domain("polylog", "Li_1 diverges at z = 1");
        }
        return Ok(-(-z).ln_1p());
    }
    Ok(polylog_unchecked(n, z))
}

fn polylog_unchecked(n: u32, z: f64) -> f64 {
    if z == 0.0 {
        return 0.0;
    }
    if n == 1 {
        return -(-z).ln_1p();
    }
    if z == 1.0 {
        return zeta_em(n, ZETA_CUTOFF);
    }
    if z == -1.0 {
        return (2f64.powi(1 - n as i32) - 1.0) * zeta_em(n, ZETA_CUTOFF);
    }
    if z.abs() <= 0.5 {
        return polylog_series(n, z);
    }
    if z < 0.0 {
        // Li_n(−x) = 2^{1−n} Li_n(x²) − Li_n(x)
        let x = -z;
        return 2f64.powi(1 - n as i32) * polylog_unchecked(n, x * x) - polylog_unchecked(n, x);
    }
    polylog_near_one(n, z)
}

fn polylog_series(n: u32, z: f64) -> f64 {
    let nf = n as f64;
    let mut s = 0.0;
    let mut zk = 1.0;
    for k in 1..200u32 {
        zk *= z;
        let t = zk / (k as f64).powf(nf);
        s += t;
        if t.abs() < 1e-18 * s.abs() {
            break;
        }
    }
    s
}

/// Expansion in μ = ln z about z = 1:
/// `Liₙ(e^μ) = Σ_{k≠n−1} ζ(n−k) μ^k/k! + μ^{n−1}/(n−1)! (H_{n−1} − ln(−μ))`.
fn polylog_near_one(n: u32, z: f64) -> f64 {
    let mu = z.ln();
    let mut s = 0.0;
    let mut pow = 1.0; // μ^k / k!
    let harmonic: f64 = (1..n).map(|j| 1.0 / j as f64).sum();
    for k in 0..(n + 60) {
        let term = if k == n - 1 {
            pow * (harmonic - (-mu).ln())
        } else {
            pow * zeta_any_int(n as i64 - k as i64)
        };
        s += term;
        if k > n + 2 && term != 0.0 && term.abs() < 1e-18 * s.abs() {
            break;
        }
        pow *= mu / (k + 1) as f64;
    }
    s
}
