//! Euler–Maclaurin tails `Σ_{n>N} g(n)` for smooth, eventually monotone `g`.
//!
//! Derivatives at the cutoff come from finite differences and the tail
//! integral from Gauss–Legendre panels in `s = ln(x/N)`, so the same code
//! serves every kernel without a hand-expanded formula.

use crate::accel::CompensatedSum;
use crate::quadrature::{gl16, gl8, gl_panel};

/// A tail value with a bound on its error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Tail {
    pub value: f64,
    pub error: f64,
}

// Far enough out in s = ln(x/N) that any polynomial-log integrand is
// well inside its asymptotic regime before we extrapolate.
const MIN_PANELS: usize = 20;
const X_LIMIT: f64 = 1e250;

/// `∫_N^∞ g(x) dx`, with `g ~ x^{−p}` (possibly times logs) eventually.
pub(crate) fn tail_integral<G: Fn(f64) -> f64>(g: &G, n: f64, power: f64) -> Tail {
    let f = |s: f64| {
        let x = n * s.exp();
        g(x) * x
    };
    let mut acc = CompensatedSum::new();
    let mut err = 0.0;
    let mut s = 0.0;
    let max_s = (X_LIMIT / n).ln().floor();
    let mut panels = 0usize;
    loop {
        let v16 = gl_panel(gl16(), s, s + 1.0, f);
        let v8 = gl_panel(gl8(), s, s + 1.0, f);
        acc.add(v16);
        // the 8-point rule is far cruder than the 16-point one, so this
        // difference grossly overstates the panel error; scale it down
        err += (v16 - v8).abs() * 1e-3 + f64::EPSILON * v16.abs();
        s += 1.0;
        panels += 1;
        if panels < MIN_PANELS {
            continue;
        }
        let x = n * s.exp();
        let gx = g(x);
        if gx == 0.0 || !gx.is_finite() {
            break;
        }
        let total = acc.value().abs();
        if s >= max_s {
            err += (gx * x).abs() * 1e3;
            break;
        }
        let p_eff = (g(x / std::f64::consts::E) / gx).ln();
        let small = v16.abs() <= 1e-17 * total;
        if p_eff >= power - 0.5 && p_eff > 1.05 && small {
            let far = gx * x / (p_eff - 1.0);
            acc.add(far);
            err += far.abs();
            break;
        }
    }
    Tail {
        value: acc.value(),
        error: err,
    }
}

/// Estimate of `g′(N)` by Richardson-extrapolated central differences.
fn first_derivative<G: Fn(f64) -> f64>(g: &G, n: f64) -> (f64, f64) {
    let d = |h: f64| (g(n + h) - g(n - h)) / (2.0 * h);
    let h = n / 64.0;
    let (d1, d2) = (d(h), d(h / 2.0));
    let r = (4.0 * d2 - d1) / 3.0;
    // the O(h⁴) remainder of r is about a sixteenth of the O(h²) one of d2
    let rounding = 8.0 * f64::EPSILON * g(n).abs() / h;
    (r, (r - d2).abs() / 16.0 + rounding)
}

/// Estimate of `g‴(N)` from the five-point stencil.
fn third_derivative<G: Fn(f64) -> f64>(g: &G, n: f64) -> f64 {
    let h = n / 16.0;
    (g(n + 2.0 * h) - 2.0 * g(n + h) + 2.0 * g(n - h) - g(n - 2.0 * h)) / (2.0 * h * h * h)
}

/// The boundary terms `−g(N)/2 − g′(N)/12 + g‴(N)/720`, with an error bound
/// built from the first omitted term and the derivative estimates.
pub(crate) fn em_boundary<G: Fn(f64) -> f64>(g: &G, n: f64, power: f64) -> Tail {
    let g0 = g(n);
    let (d1, d1_err) = first_derivative(g, n);
    let d3 = third_derivative(g, n);
    // local decay exponent, which exceeds the declared one for fast rows
    let p_local = if g0 != 0.0 { (-n * d1 / g0).abs() } else { 0.0 };
    let p = power.max(p_local);
    let value = -0.5 * g0 - d1 / 12.0 + d3 / 720.0;
    // g⁽⁵⁾ ≈ g‴ (p+3)(p+4)/N², weighted by B₆/6! = 1/30240
    let next = (d3 * (p + 3.0) * (p + 4.0) / (n * n)).abs() / 30240.0;
    let error = 2.0 * next + d1_err / 12.0 + 0.05 * (d3 / 720.0).abs() + 4.0 * f64::EPSILON * value.abs();
    Tail { value, error }
}

/// `Σ_{n>N} g(n)` by Euler–Maclaurin.
pub(crate) fn em_tail<G: Fn(f64) -> f64>(g: &G, n: f64, power: f64) -> Tail {
    let i = tail_integral(g, n, power);
    let b = em_boundary(g, n, power);
    Tail {
        value: i.value + b.value,
        error: i.error + b.error,
    }
}

/// `Σ_{n>N} (−1)ⁿ g(n)` for even `N`, by pairing terms into
/// `h(m) = g(2m) − g(2m−1)` and applying Euler–Maclaurin to `h` at `M = N/2`.
///
/// The integral of `h` collapses to `−½∫_{N−1}^{N} g`, which avoids
/// evaluating the cancelling difference far out in the tail.
pub(crate) fn alternating_tail<G: Fn(f64) -> f64>(g: &G, n: f64, power: f64) -> Tail {
    debug_assert!(n % 2.0 == 0.0);
    let h = |m: f64| g(2.0 * m) - g(2.0 * m - 1.0);
    let m = n / 2.0;
    let integral = -0.5 * gl_panel(gl16(), n - 1.0, n, g);
    let b = em_boundary(&h, m, power + 1.0);
    Tail {
        value: integral + b.value,
        error: b.error + 4.0 * f64::EPSILON * integral.abs(),
    }
}

/// Closed-form Euler–Maclaurin tail `Σ_{n>N} n^{−p} logˡ n` for `l ≤ 2`,
/// through the `g‴/720` term.
pub fn power_log_tail(p: u32, l: u32, n: f64) -> f64 {
    assert!(p >= 2 && l <= 2, "tail table covers p >= 2, l <= 2");
    let q = (p - 1) as f64;
    let ln = n.ln();
    let base = n.powf(-q);
    let integral = match l {
        0 => base / q,
        1 => base * (ln / q + 1.0 / (q * q)),
        _ => base * (ln * ln / q + 2.0 * ln / (q * q) + 2.0 / (q * q * q)),
    };
    // g⁽ʲ⁾(x) = x^{−p−j} P_j(ln x); P_0 = Lˡ and
    // P_{j+1} = P_j′ − (p+j) P_j, with polynomials stored by coefficient.
    let mut poly = vec![0.0; 3];
    poly[l as usize] = 1.0;
    let mut derivs = [0.0; 4];
    for (j, d) in derivs.iter_mut().enumerate() {
        let val: f64 = poly.iter().enumerate().map(|(i, c)| c * ln.powi(i as i32)).sum();
        *d = n.powf(-(p as f64) - j as f64) * val;
        let shift = p as f64 + j as f64;
        let mut next = vec![0.0; 3];
        for i in 0..3 {
            next[i] -= shift * poly[i];
            if i > 0 {
                next[i - 1] += i as f64 * poly[i];
            }
        }
        poly = next;
    }
    integral - 0.5 * derivs[0] - derivs[1] / 12.0 + derivs[3] / 720.0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integral_of_pure_powers() {
        for n in [64.0, 1e3, 1e6] {
            let t = tail_integral(&|x: f64| x.powi(-2), n, 2.0);
            assert!((t.value - 1.0 / n).abs() < 1e-15 / n, "{n}: {t:?}");
            let t = tail_integral(&|x: f64| x.powi(-3), n, 3.0);
            assert!((t.value - 0.5 / (n * n)).abs() < 1e-15 / (n * n));
        }
    }

    #[test]
    fn integral_with_log_squared() {
        let n: f64 = 1e6;
        let t = tail_integral(&|x: f64| x.ln().powi(2) / (x * x), n, 2.0);
        let l = n.ln();
        let want = (l * l + 2.0 * l + 2.0) / n;
        assert!((t.value - want).abs() < 1e-14 * want, "{} vs {want}", t.value);
    }

    #[test]
    fn zeta_two_tail() {
        let n = 1000.0;
        let direct: f64 = (1..=1000).rev().map(|k| 1.0 / (k as f64 * k as f64)).sum();
        let t = em_tail(&|x: f64| 1.0 / (x * x), n, 2.0);
        let z2 = std::f64::consts::PI.powi(2) / 6.0;
        assert!((direct + t.value - z2).abs() < 1e-15, "{}", direct + t.value - z2);
        assert!(t.error < 1e-14, "{t:?}");
    }

    #[test]
    fn analytic_table_matches_numeric_tail() {
        for p in [2u32, 3] {
            for l in 0..=2u32 {
                for n in [1e3, 1e4, 1e6] {
                    let g = |x: f64| x.powi(-(p as i32)) * x.ln().powi(l as i32);
                    let num = em_tail(&g, n, p as f64).value;
                    let ana = power_log_tail(p, l, n);
                    assert!((num - ana).abs() < 1e-13 * ana.abs(), "p={p} l={l} N={n}: {num} vs {ana}");
                }
            }
        }
    }

    #[test]
    fn alternating_pairs() {
        // Σ_{n>N} (−1)ⁿ/n², N even, against a long direct sum
        let n = 1000.0;
        let t = alternating_tail(&|x: f64| 1.0 / (x * x), n, 2.0);
        let mut direct = CompensatedSum::new();
        for k in 1001..4_000_001u64 {
            let s = if k % 2 == 0 { 1.0 } else { -1.0 };
            direct.add(s / (k as f64 * k as f64));
        }
        // remainder beyond 4e6 is about −1/(2·(4e6)²)
        let rest = -0.5 / 16e12;
        assert!((t.value - direct.value() - rest).abs() < 1e-16, "{} vs {}", t.value, direct.value());
    }
}
