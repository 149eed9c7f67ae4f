//! Numerical checks of the Mellin-transform pair `θ(x−1) x^{−1} logᵏx ↔
//! k!/zᵏ⁺¹` and of the three-term factorization formula
//!
//! `(A₁+A₂+A₃)^{−p} = (2πi)^{−2} ∫∫ Γ(z₁)Γ(z₂)Γ(p−z₁−z₂)/Γ(p)
//!  · A₁^{−z₁} A₂^{−z₂} A₃^{z₁+z₂−p} dz₁ dz₂`
//!
//! with straight vertical contours `Re zⱼ = cⱼ`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::accel::CompensatedSum;
use crate::error::{domain, Error, Result};
use crate::quadrature::{exp_sinh, gl16, gl8, gl_panel, gauss_legendre};
use crate::specfun::{ln_gamma, log_gamma_complex};

/// A truncated vertical contour `Re z = c`, `|Im z| ≤ height`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourSpec {
    /// Abscissa of the contour. Ignored by [`factorization_check`], which
    /// takes one abscissa per variable.
    pub c: f64,
    pub height: f64,
    /// Quadrature nodes along the contour (per axis for double integrals).
    pub nodes: usize,
    /// Largest acceptable a-priori truncation error.
    pub tolerance: f64,
}

impl ContourSpec {
    /// Defaults for [`inverse_mellin_example`]: `c = 1`, `T = 5·10⁴`.
    ///
    /// The `k = 0` integrand decays only like `1/t`, so the truncation error
    /// is `O(x/(T log x))`; this height keeps it under `10⁻⁴` for `x ≥ 2`.
    pub fn inverse_default() -> Self {
        ContourSpec {
            c: 1.0,
            height: 5e4,
            nodes: 800_000,
            tolerance: 1e-4,
        }
    }

    /// Defaults for [`factorization_check`]: `T = 60`, 2000 nodes per axis.
    pub fn factorization_default() -> Self {
        ContourSpec {
            c: 0.5,
            height: 60.0,
            nodes: 2000,
            tolerance: 1e-3,
        }
    }

    fn validate(&self, op: &'static str) -> Result<()> {
        if !(self.c > 0.0 && self.height > 0.0 && self.tolerance > 0.0) || !self.height.is_finite() {
            return domain(op, format!("contour needs c > 0, height > 0, tolerance > 0: {self:?}"));
        }
        if self.nodes < 32 {
            return domain(op, format!("contour needs at least 32 nodes, got {}", self.nodes));
        }
        Ok(())
    }
}

/// `∫₁^∞ x^{−z−1} logᵏx dx`, computed as `∫₀^∞ e^{−zu} uᵏ du`; equals
/// `k!/zᵏ⁺¹`.
pub fn mellin_forward_example(k: u32, z: f64) -> Result<f64> {
    if !(z > 0.0) || !z.is_finite() {
        return domain("mellin_forward_example", format!("requires z > 0, got {z}"));
    }
    let kk = k as i32;
    let r = exp_sinh(|u, _| (-z * u).exp() * u.powi(kk), 0.0, 1e-15);
    Ok(r.value)
}

/// Result of a truncated inverse transform.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InverseResult {
    pub value: f64,
    /// Bound on the part of the contour beyond `|Im z| = T`.
    pub truncation_bound: f64,
    /// Gauss–Legendre 16/8 panel disagreement.
    pub quadrature_error: f64,
}

/// `(1/2πi)∫_{c−iT}^{c+iT} x^z k!/zᵏ⁺¹ dz`, which tends to `logᵏx` for
/// `x > 1`.
///
/// Only the real part is kept, so the integral folds onto `[0, T]`. The
/// discarded tail is bounded by integrating by parts once:
/// `|(1/π)∫_T^∞ Re(x^{c+it} k!/(c+it)ᵏ⁺¹) dt| ≤ 2 xᶜ k!/(π Tᵏ⁺¹ log x)`.
pub fn inverse_mellin_example(k: u32, x: f64, spec: &ContourSpec) -> Result<InverseResult> {
    spec.validate("inverse_mellin_example")?;
    if !(x > 1.0) || !x.is_finite() {
        return domain("inverse_mellin_example", format!("requires x > 1, got {x}"));
    }
    let ln_x = x.ln();
    let fact = ln_gamma(f64::from(k) + 1.0)?.exp();
    let c = spec.c;
    let t = spec.height;
    let truncation_bound = 2.0 * x.powf(c) * fact / (PI * t.powi(k as i32 + 1) * ln_x);
    if truncation_bound > spec.tolerance {
        return Err(Error::TruncationTooSmall {
            bound: truncation_bound,
            tolerance: spec.tolerance,
        });
    }
    let f = |s: f64| {
        let z = Complex64::new(c, s);
        let num = Complex64::new(0.0, s * ln_x).exp() * x.powf(c);
        (num * fact / z.powu(k + 1)).re
    };
    let panels = (spec.nodes / 16).max(2);
    let width = t / panels as f64;
    let parts: Vec<(f64, f64)> = (0..panels)
        .into_par_iter()
        .map(|i| {
            let (a, b) = (i as f64 * width, (i + 1) as f64 * width);
            let v16 = gl_panel(gl16(), a, b, f);
            let v8 = gl_panel(gl8(), a, b, f);
            (v16, v16 - v8)
        })
        .collect();
    let mut acc = CompensatedSum::new();
    let mut err = 0.0;
    for (v, d) in parts {
        acc.add(v);
        err += d.abs();
    }
    Ok(InverseResult {
        value: acc.value() / PI,
        truncation_bound,
        // the 8-point difference overstates the 16-point error by far
        quadrature_error: err * 1e-3 / PI + 8.0 * f64::EPSILON * acc.abs_sum() / PI,
    })
}

/// Both sides of the factorization formula and their difference.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FactorizationResult {
    /// `(A₁+A₂+A₃)^{−p}` on the principal branch.
    pub lhs: Complex64,
    /// The truncated double contour integral.
    pub rhs: Complex64,
    pub abs_diff: f64,
    /// Estimate of the integral outside `|Im zⱼ| ≤ T`.
    pub tail_bound: f64,
    /// Change in `rhs` when the node count is halved.
    pub refinement_delta: f64,
}

/// Validity region of the formula: `Im Aᵢ > 0`, `cⱼ > 0`, `p − c₁ − c₂ > 0`.
fn check_validity(a: [Complex64; 3], p: f64, c1: f64, c2: f64) -> Result<()> {
    for (i, ai) in a.iter().enumerate() {
        if !(ai.im > 0.0) || !ai.re.is_finite() || !ai.im.is_finite() {
            return Err(Error::ValidityViolation(format!("Im A{} must be > 0, got {ai}", i + 1)));
        }
    }
    if !(c1 > 0.0 && c2 > 0.0) {
        return Err(Error::ValidityViolation(format!("c1, c2 must be > 0, got {c1}, {c2}")));
    }
    if !(p - c1 - c2 > 0.0) || !p.is_finite() {
        return Err(Error::ValidityViolation(format!("p - c1 - c2 must be > 0, got p = {p}, c1 = {c1}, c2 = {c2}")));
    }
    Ok(())
}

/// One evaluation of the double integral on an `n × n` Gauss–Legendre grid.
/// Returns the value and the integral of `|integrand|` over the outer band
/// `max(|t₁|, |t₂|) > 0.9 T`.
fn double_contour(a: [Complex64; 3], p: f64, c1: f64, c2: f64, height: f64, nodes: usize) -> Result<(Complex64, f64)> {
    let panels = (nodes / 16).max(1);
    let width = 2.0 * height / panels as f64;
    let rule = gauss_legendre(16);
    let grid: Vec<(f64, f64)> = (0..panels)
        .flat_map(|i| {
            let lo = -height + i as f64 * width;
            rule.iter().map(move |&(x, w)| (lo + 0.5 * width * (x + 1.0), 0.5 * width * w))
        })
        .collect();
    let ln_a: Vec<Complex64> = a.iter().map(|z| z.ln()).collect();
    let ln_gp = ln_gamma(p)?;
    // the factors depending on one variable only, in log form:
    // log Γ(zⱼ) − zⱼ log Aⱼ + zⱼ log A₃
    let side = |c: f64, ln_aj: Complex64| -> Result<Vec<Complex64>> {
        grid.iter()
            .map(|&(t, _)| {
                let z = Complex64::new(c, t);
                Ok(log_gamma_complex(z)? - z * ln_aj + z * ln_a[2])
            })
            .collect()
    };
    let s1 = side(c1, ln_a[0])?;
    let s2 = side(c2, ln_a[1])?;
    let base = -p * ln_a[2] - ln_gp;
    let band = 0.9 * height;
    let rows: Vec<Result<(Complex64, f64)>> = (0..grid.len())
        .into_par_iter()
        .map(|i| {
            let (t1, w1) = grid[i];
            let mut re = CompensatedSum::new();
            let mut im = CompensatedSum::new();
            let mut outer = 0.0;
            for (j, &(t2, w2)) in grid.iter().enumerate() {
                let z3 = Complex64::new(p - c1 - c2, -t1 - t2);
                let v = (s1[i] + s2[j] + log_gamma_complex(z3)? + base).exp() * (w1 * w2);
                re.add(v.re);
                im.add(v.im);
                if t1.abs() > band || t2.abs() > band {
                    outer += v.norm();
                }
            }
            Ok((Complex64::new(re.value(), im.value()), outer))
        })
        .collect();
    let mut re = CompensatedSum::new();
    let mut im = CompensatedSum::new();
    let mut outer = 0.0;
    for r in rows {
        let (v, o) = r?;
        re.add(v.re);
        im.add(v.im);
        outer += o;
    }
    // dz₁dz₂ = −dt₁dt₂ cancels the i² in (2πi)⁻²
    let scale = 1.0 / (4.0 * PI * PI);
    Ok((Complex64::new(re.value(), im.value()) * scale, outer * scale))
}

/// Checks the factorization formula at one point.
///
/// The integrand decays exponentially in every direction inside the
/// validity region, so the mass beyond `T` is bounded by the mass of the
/// outer band `0.9T < max|tⱼ| ≤ T` once the decay over the band width
/// exceeds a factor of two, which holds comfortably at the default height.
/// The grid is also evaluated with half the nodes; the difference is
/// reported as `refinement_delta`.
pub fn factorization_check(a: [Complex64; 3], p: f64, c1: f64, c2: f64, spec: &ContourSpec) -> Result<FactorizationResult> {
    check_validity(a, p, c1, c2)?;
    if !(spec.height > 0.0 && spec.height.is_finite() && spec.tolerance > 0.0) || spec.nodes < 32 {
        return domain("factorization_check", format!("invalid contour {spec:?}"));
    }
    let lhs = (-p * (a[0] + a[1] + a[2]).ln()).exp();
    let (rhs, band_mass) = double_contour(a, p, c1, c2, spec.height, spec.nodes)?;
    let tail_bound = band_mass;
    if tail_bound > spec.tolerance {
        return Err(Error::TruncationTooSmall {
            bound: tail_bound,
            tolerance: spec.tolerance,
        });
    }
    let (coarse, _) = double_contour(a, p, c1, c2, spec.height, spec.nodes / 2)?;
    Ok(FactorizationResult {
        lhs,
        rhs,
        abs_diff: (lhs - rhs).norm(),
        tail_bound,
        refinement_delta: (rhs - coarse).norm(),
    })
}

/// The two reference points used by the checks.
pub fn factorization_test_points() -> [([Complex64; 3], f64, f64, f64); 2] {
    let i = Complex64::new(0.0, 1.0);
    [
        ([i, i, i], 3.0, 0.5, 0.5),
        (
            [Complex64::new(1.0, 1.0), Complex64::new(2.0, 1.0), Complex64::new(0.5, 2.0)],
            2.5,
            0.7,
            0.7,
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::E;

    #[test]
    fn forward_examples() {
        assert!((mellin_forward_example(0, 1.0).unwrap() - 1.0).abs() < 1e-14);
        assert!((mellin_forward_example(2, 1.0).unwrap() - 2.0).abs() < 1e-13);
        assert!((mellin_forward_example(3, 0.5).unwrap() - 96.0).abs() < 96.0 * 1e-12);
        assert!(mellin_forward_example(1, 0.0).is_err());
    }

    #[test]
    fn inverse_examples() {
        let spec = ContourSpec::inverse_default();
        let r = inverse_mellin_example(1, E, &ContourSpec { height: 200.0, ..spec }).unwrap();
        assert!((r.value - 1.0).abs() < 1e-4, "{r:?}");
        let r = inverse_mellin_example(2, 10.0, &spec).unwrap();
        assert!((r.value - 10f64.ln().powi(2)).abs() < 1e-4, "{r:?}");
        let r = inverse_mellin_example(0, 2.0, &spec).unwrap();
        assert!((r.value - 1.0).abs() < 1e-4, "{r:?}");
    }

    #[test]
    fn short_contour_is_refused_for_k0() {
        let spec = ContourSpec {
            height: 200.0,
            ..ContourSpec::inverse_default()
        };
        assert!(matches!(
            inverse_mellin_example(0, 2.0, &spec),
            Err(Error::TruncationTooSmall { .. })
        ));
        assert!(inverse_mellin_example(0, 1.0, &ContourSpec::inverse_default()).is_err());
    }

    #[test]
    fn validity_is_enforced() {
        let spec = ContourSpec::factorization_default();
        let i = Complex64::new(0.0, 1.0);
        let bad = Complex64::new(1.0, -1.0);
        assert!(matches!(
            factorization_check([i, bad, i], 3.0, 0.5, 0.5, &spec),
            Err(Error::ValidityViolation(_))
        ));
        assert!(matches!(
            factorization_check([i, i, i], 1.0, 0.5, 0.5, &spec),
            Err(Error::ValidityViolation(_))
        ));
        assert!(matches!(
            factorization_check([i, i, i], 3.0, 0.0, 0.5, &spec),
            Err(Error::ValidityViolation(_))
        ));
    }

    #[test]
    fn factorization_on_the_imaginary_axis() {
        let spec = ContourSpec {
            nodes: 800,
            ..ContourSpec::factorization_default()
        };
        let i = Complex64::new(0.0, 1.0);
        let r = factorization_check([i, i, i], 3.0, 0.5, 0.5, &spec).unwrap();
        assert!((r.lhs - i / 27.0).norm() < 1e-15);
        assert!(r.abs_diff < 1e-3, "{r:?}");
    }
}
