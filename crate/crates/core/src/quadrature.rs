//! Numerical integration: tanh-sinh and exp-sinh (double exponential)
//! rules for endpoint singularities, and composite Gauss–Legendre panels for
//! smooth integrands.

use std::f64::consts::FRAC_PI_2;
use std::sync::OnceLock;

use crate::accel::CompensatedSum;

/// Value of a quadrature together with an estimate of its error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

const MAX_LEVEL: u32 = 11;

/// Tanh-sinh quadrature of `f` over `[a, b]`.
///
/// The integrand receives `(x, x − a, b − x)`, with both distances computed
/// without cancellation, so integrands with `log(b − x)`-type endpoint
/// behaviour keep full relative accuracy right up to the endpoint. Levels are
/// refined until successive estimates differ by less than `rel_tol` relative
/// to the value; the reported error is that difference.
pub fn tanh_sinh<F>(f: F, a: f64, b: f64, rel_tol: f64) -> QuadratureResult
where
    F: Fn(f64, f64, f64) -> f64,
{
    let width = b - a;
    let half = width / 2.0;
    let mut evaluations = 0usize;

    // Contribution of the node at parameter t (and its mirror).
    let node = |t: f64, evals: &mut usize| -> Option<f64> {
        let u = FRAC_PI_2 * t.sinh();
        let e = (-2.0 * u.abs()).exp();
        // 1 - |tanh u|
        let comp = 2.0 * e / (1.0 + e);
        if comp == 0.0 {
            return None;
        }
        let w = FRAC_PI_2 * t.cosh() * comp * (2.0 - comp);
        let d = half * comp;
        if d == 0.0 || w == 0.0 {
            return None;
        }
        let mut acc = 0.0;
        if t == 0.0 {
            *evals += 1;
            let v = f(a + half, half, half);
            return Some(if v.is_finite() { w * v } else { 0.0 });
        }
        // near b
        *evals += 1;
        let v = f(b - d, width - d, d);
        if v.is_finite() {
            acc += w * v;
        }
        // near a
        *evals += 1;
        let v = f(a + d, d, width - d);
        if v.is_finite() {
            acc += w * v;
        }
        Some(acc)
    };

    let sweep = |h: f64, odd_only: bool, evals: &mut usize| -> f64 {
        let mut s = CompensatedSum::new();
        let mut k: u64 = if odd_only { 1 } else { 0 };
        let step = if odd_only { 2 } else { 1 };
        loop {
            let t = k as f64 * h;
            match node(t, evals) {
                Some(v) => s.add(v),
                None => break,
            }
            if t > 7.0 {
                break;
            }
            k += step;
        }
        s.value()
    };

    let mut h = 1.0;
    let mut sum = sweep(h, false, &mut evaluations);
    let mut estimate = sum * h * half;
    let mut err = f64::INFINITY;
    for _level in 1..=MAX_LEVEL {
        h /= 2.0;
        sum += sweep(h, true, &mut evaluations);
        let next = sum * h * half;
        err = (next - estimate).abs();
        estimate = next;
        if err <= rel_tol * estimate.abs() || err == 0.0 {
            break;
        }
    }
    QuadratureResult {
        value: estimate,
        error_estimate: err.max(4.0 * f64::EPSILON * estimate.abs()),
        evaluations,
    }
}

/// Exp-sinh quadrature of `f` over `[a, ∞)`; `f` receives `(x, x − a)`.
///
/// The integrand must decay at infinity; nodes whose contribution underflows
/// or is not finite terminate the sweep in that direction.
pub fn exp_sinh<F>(f: F, a: f64, rel_tol: f64) -> QuadratureResult
where
    F: Fn(f64, f64) -> f64,
{
    let mut evaluations = 0usize;
    let node = |t: f64, evals: &mut usize| -> Option<f64> {
        let u = FRAC_PI_2 * t.sinh();
        if !(-740.0..=700.0).contains(&u) {
            return None;
        }
        let d = u.exp();
        let w = FRAC_PI_2 * t.cosh() * d;
        *evals += 1;
        let v = f(a + d, d);
        let c = w * v;
        if !c.is_finite() {
            return None;
        }
        Some(c)
    };
    let sweep = |h: f64, odd_only: bool, evals: &mut usize| -> f64 {
        let mut s = CompensatedSum::new();
        let start: i64 = if odd_only { 1 } else { 0 };
        let step: i64 = if odd_only { 2 } else { 1 };
        // t >= 0 direction
        let mut k = start;
        let mut small = 0;
        loop {
            let t = k as f64 * h;
            match node(t, evals) {
                Some(c) => {
                    s.add(c);
                    if c.abs() <= 1e-20 * s.value().abs() {
                        small += 1;
                        if small >= 3 {
                            break;
                        }
                    } else {
                        small = 0;
                    }
                }
                None => break,
            }
            k += step;
        }
        // t < 0 direction
        let mut k: i64 = -1;
        let mut small = 0;
        loop {
            let t = k as f64 * h;
            match node(t, evals) {
                Some(c) => {
                    s.add(c);
                    if c.abs() <= 1e-20 * s.value().abs() {
                        small += 1;
                        if small >= 3 {
                            break;
                        }
                    } else {
                        small = 0;
                    }
                }
                None => break,
            }
            k -= step;
        }
        s.value()
    };

    let mut h = 1.0;
    let mut sum = sweep(h, false, &mut evaluations);
    let mut estimate = sum * h;
    let mut err = f64::INFINITY;
    for _ in 1..=MAX_LEVEL {
        h /= 2.0;
        sum += sweep(h, true, &mut evaluations);
        let next = sum * h;
        err = (next - estimate).abs();
        estimate = next;
        if err <= rel_tol * estimate.abs() || err == 0.0 {
            break;
        }
    }
    QuadratureResult {
        value: estimate,
        error_estimate: err.max(4.0 * f64::EPSILON * estimate.abs()),
        evaluations,
    }
}

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[−1, 1]`.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    assert!(n >= 1);
    let mut out = Vec::with_capacity(n);
    let nf = n as f64;
    for i in 0..n {
        // Tricomi initial guess, then Newton on P_n.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for j in 2..=n {
                let jf = j as f64;
                let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 1 { x } else { p1 };
            let pn1 = if n == 1 { 1.0 } else { p0 };
            dp = nf * (x * pn - pn1) / (x * x - 1.0);
            let dx = pn / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out.push((x, w));
    }
    out.reverse();
    out
}

/// The 16-point rule, computed once.
pub fn gl16() -> &'static [(f64, f64)] {
    static NODES: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    NODES.get_or_init(|| gauss_legendre(16))
}

pub(crate) fn gl8() -> &'static [(f64, f64)] {
    static NODES: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    NODES.get_or_init(|| gauss_legendre(8))
}

/// One Gauss–Legendre panel on `[a, b]` using the given rule.
#[inline]
pub fn gl_panel<F: FnMut(f64) -> f64>(rule: &[(f64, f64)], a: f64, b: f64, mut f: F) -> f64 {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut s = 0.0;
    for &(x, w) in rule {
        s += w * f(mid + half * x);
    }
    s * half
}

/// Composite 16-point Gauss–Legendre over `panels` equal panels of `[a, b]`.
pub fn gauss_legendre_composite<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, panels: usize) -> f64 {
    let panels = panels.max(1);
    let width = (b - a) / panels as f64;
    let mut s = CompensatedSum::new();
    for p in 0..panels {
        let lo = a + p as f64 * width;
        s.add(gl_panel(gl16(), lo, lo + width, &mut f));
    }
    s.value()
}
