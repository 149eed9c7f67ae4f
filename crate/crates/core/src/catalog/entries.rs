use super::{Identity, Lhs};
use crate::closed_form::{cf_add, ClosedForm, Rational};
use crate::specfun::{gamma_ratio_log_offset, harmonic, ln_beta, trigamma, zeta_int};
use crate::summation::{lemma_partial_fraction, Summand1D, Summand2D, TailClass};

const TOL_1D: f64 = 1e-9;
const TOL_EXP: f64 = 1e-11;
const TOL_2D_REDUCED: f64 = 1e-8;
const TOL_2D: f64 = 1e-7;

#[derive(Clone, Copy)]
enum B {
    One,
    Zeta(u32),
    PiCl2(i64, i64),
}

/// Builds a closed form from `(num, den, constant)` triples.
fn rhs(parts: &[(i64, i64, B)]) -> ClosedForm {
    let mut cf = ClosedForm::zero();
    for &(num, den, b) in parts {
        let q = Rational::new(num, den).expect("catalog coefficient");
        let term = match b {
            B::One => ClosedForm::rational(q),
            B::Zeta(m) => ClosedForm::zeta(q, m).expect("catalog zeta"),
            B::PiCl2(p, r) => ClosedForm::pi_cl2(q, Rational::new(p, r).expect("angle")).expect("catalog Cl2"),
        };
        cf = cf_add(&cf, &term).expect("catalog sum");
    }
    cf
}

/// `γ + ψ(x)`; summand arguments are always positive.
pub(crate) fn h(x: f64) -> f64 {
    harmonic(x).unwrap_or(f64::NAN)
}

fn psi1(x: f64) -> f64 {
    trigamma(x).unwrap_or(f64::NAN)
}

fn lemma(a: f64, b: f64) -> f64 {
    lemma_partial_fraction(a, b).unwrap_or(f64::NAN)
}

/// `Σ_{n≥1} [γ+ψ(1+kn)]/n²`, optionally with `(−1)ⁿ`.
pub(crate) fn theorem_summand(k: u32, alternating: bool) -> Summand1D {
    let k = k as f64;
    let class = TailClass::poly(2, 1);
    let class = if alternating { TailClass::alternating(class) } else { class };
    Summand1D::new(1, class, move |x| h(1.0 + k * x) / (x * x))
}

fn one(id: &str, description: &str, anchor: &str, lhs: Summand1D, rhs: ClosedForm, tolerance: f64) -> Identity {
    Identity {
        id: id.to_string(),
        description: description.to_string(),
        anchor: anchor.to_string(),
        lhs: Lhs::One(lhs),
        rhs,
        tolerance,
    }
}

fn two(id: &str, description: &str, anchor: &str, lhs: Summand2D, rhs: ClosedForm, tolerance: f64) -> Identity {
    Identity {
        id: id.to_string(),
        description: description.to_string(),
        anchor: anchor.to_string(),
        lhs: Lhs::Two(lhs),
        rhs,
        tolerance,
    }
}

/// `1/(k(n+k)(1+n+k))`, the common kernel of the double sums over `n ≥ 0`.
fn kernel(n: f64, k: f64) -> f64 {
    1.0 / (k * (n + k) * (1.0 + n + k))
}

pub(super) fn build() -> Vec<Identity> {
    use B::*;
    let theorem = "Theorem family";
    let alt = "alternating Theorem family";
    let mut v = Vec::with_capacity(31);

    let t1: [(u32, ClosedForm); 5] = [
        (1, rhs(&[(2, 1, Zeta(3))])),
        (2, rhs(&[(11, 4, Zeta(3))])),
        (3, rhs(&[(5, 1, Zeta(3)), (-2, 3, PiCl2(1, 3))])),
        (4, rhs(&[(67, 8, Zeta(3)), (-2, 1, PiCl2(1, 2))])),
        (6, rhs(&[(73, 4, Zeta(3)), (-16, 3, PiCl2(1, 3))])),
    ];
    for (k, r) in t1 {
        let desc = format!("sum_{{n>=1}} [gamma + psi(1+{k}n)] / n^2");
        v.push(one(&format!("T1.k{k}"), &desc, theorem, theorem_summand(k, false), r, TOL_1D));
    }
    let a1: [(u32, ClosedForm); 3] = [
        (1, rhs(&[(-5, 8, Zeta(3))])),
        (2, rhs(&[(23, 16, Zeta(3)), (-1, 1, PiCl2(1, 2))])),
        (3, rhs(&[(33, 8, Zeta(3)), (-2, 1, PiCl2(1, 3))])),
    ];
    for (k, r) in a1 {
        let desc = format!("sum_{{n>=1}} (-1)^n [gamma + psi(1+{k}n)] / n^2");
        v.push(one(&format!("A1.k{k}"), &desc, alt, theorem_summand(k, true), r, TOL_1D));
    }

    let rational = "rational kernel with psi";
    v.push(one(
        "R1",
        "sum_{n>=1} [gamma + psi(1+n)] / (n(n+1))",
        rational,
        Summand1D::new(1, TailClass::poly(2, 1), |x| h(1.0 + x) / (x * (x + 1.0))),
        rhs(&[(1, 1, Zeta(2))]),
        TOL_1D,
    ));
    v.push(one(
        "R2",
        "sum_{n>=1} [gamma + psi(1+n)] / (n^2(n+1))",
        rational,
        Summand1D::new(1, TailClass::poly(3, 1), |x| h(1.0 + x) / (x * x * (x + 1.0))),
        rhs(&[(2, 1, Zeta(3)), (-1, 1, Zeta(2))]),
        TOL_1D,
    ));
    v.push(one(
        "R3",
        "sum_{n>=1} [gamma + psi(1+n)] / (n(n+1)^2)",
        rational,
        Summand1D::new(1, TailClass::poly(3, 1), |x| h(1.0 + x) / (x * (x + 1.0) * (x + 1.0))),
        rhs(&[(-1, 1, Zeta(3)), (1, 1, Zeta(2))]),
        TOL_1D,
    ));

    let tri = "trigamma kernel";
    v.push(one(
        "P1",
        "sum_{n>=1} psi'(n) / n",
        tri,
        Summand1D::new(1, TailClass::poly(2, 0), |x| psi1(x) / x),
        rhs(&[(2, 1, Zeta(3))]),
        TOL_1D,
    ));
    v.push(one(
        "P2",
        "sum_{n>=1} psi'(1+n) / n",
        tri,
        Summand1D::new(1, TailClass::poly(2, 0), |x| psi1(1.0 + x) / x),
        rhs(&[(1, 1, Zeta(3))]),
        TOL_1D,
    ));
    v.push(one(
        "P3",
        "sum_{n>=1} psi'(n) / (n(n+1))",
        tri,
        Summand1D::new(1, TailClass::poly(3, 0), |x| psi1(x) / (x * (x + 1.0))),
        rhs(&[(1, 1, One)]),
        TOL_1D,
    ));
    v.push(one(
        "P4",
        "sum_{n>=1} psi'(1+n) / (n(n+1))",
        tri,
        Summand1D::new(1, TailClass::poly(3, 0), |x| psi1(1.0 + x) / (x * (x + 1.0))),
        rhs(&[(-1, 1, Zeta(3)), (1, 1, Zeta(2))]),
        TOL_1D,
    ));

    let bil = "bilinear in psi";
    let bilinear: [(&str, f64, f64, &str, ClosedForm); 6] = [
        ("B1", 0.0, 0.0, "[gamma + psi(n)]^2", rhs(&[(1, 1, Zeta(2)), (1, 1, One)])),
        ("B2", 0.0, 1.0, "[gamma + psi(n)][gamma + psi(1+n)]", rhs(&[(1, 1, Zeta(3)), (1, 1, Zeta(2))])),
        ("B3", 0.0, 2.0, "[gamma + psi(n)][gamma + psi(2+n)]", rhs(&[(3, 1, One)])),
        ("B4", 1.0, 1.0, "[gamma + psi(1+n)]^2", rhs(&[(3, 1, Zeta(3))])),
        ("B5", 1.0, 2.0, "[gamma + psi(1+n)][gamma + psi(2+n)]", rhs(&[(2, 1, Zeta(3)), (1, 1, Zeta(2))])),
        ("B6", 2.0, 2.0, "[gamma + psi(2+n)]^2", rhs(&[(1, 1, Zeta(2)), (3, 1, One)])),
    ];
    for (id, a, b, factors, r) in bilinear {
        let desc = format!("sum_{{n>=1}} {factors} / (n(n+1))");
        let s = Summand1D::new(1, TailClass::poly(2, 2), move |x| h(a + x) * h(b + x) / (x * (x + 1.0)));
        v.push(one(id, &desc, bil, s, r, TOL_1D));
    }

    let gam = "Gamma-function ratio";
    // Γ(n)²/Γ(2n) = B(n, n)
    let g_ratio = |x: f64| ln_beta(x, x).map(f64::exp).unwrap_or(f64::NAN) / (x * x);
    v.push(one(
        "G1",
        "sum_{n>=1} Gamma(n)^2 / (n^2 Gamma(2n))",
        gam,
        Summand1D::new(1, TailClass::Exponential, g_ratio),
        rhs(&[(-8, 3, Zeta(3)), (4, 3, PiCl2(1, 3))]),
        TOL_EXP,
    ));
    v.push(one(
        "G2",
        "sum_{n>=1} (-1)^n Gamma(n)^2 / (n^2 Gamma(2n))",
        gam,
        Summand1D::new(1, TailClass::alternating(TailClass::Exponential), g_ratio),
        rhs(&[(-4, 5, Zeta(3))]),
        TOL_EXP,
    ));

    let plain2 = "double sum without psi";
    v.push(two(
        "D1",
        "sum_{n>=1} sum_{k>=1} 1 / (nk(n+k))",
        plain2,
        Summand2D::new(1, 1, TailClass::poly(2, 0), TailClass::poly(2, 1), |n, k| 1.0 / (n * k * (n + k)))
            .with_reduction(Summand1D::new(1, TailClass::poly(2, 1), |k| lemma(0.0, k) / k)),
        rhs(&[(2, 1, Zeta(3))]),
        TOL_2D_REDUCED,
    ));
    v.push(two(
        "D2",
        "sum_{n>=0} sum_{k>=1} 1 / (k(n+k)(1+n+k))",
        plain2,
        Summand2D::new(0, 1, TailClass::poly(2, 0), TailClass::poly(2, 0), kernel)
            .with_reduction(Summand1D::new(1, TailClass::poly(2, 0), |k| lemma(k - 1.0, k) / k)),
        rhs(&[(1, 1, Zeta(2))]),
        TOL_2D_REDUCED,
    ));
    v.push(two(
        "D3",
        "sum_{n>=1} sum_{k>=1} Gamma(n) Gamma(k) / (k Gamma(1+n+k))",
        plain2,
        // Γ(n)Γ(k)/(kΓ(1+n+k)) = B(n, k+1)/k²
        Summand2D::new(1, 1, TailClass::poly(2, 0), TailClass::poly(3, 0), |n, k| {
            ln_beta(n, k + 1.0).map(f64::exp).unwrap_or(f64::NAN) / (k * k)
        }),
        rhs(&[(1, 1, Zeta(3))]),
        TOL_2D,
    ));
    v.push(two(
        "D4",
        "sum_{n>=1} sum_{k>=1} Gamma(2k) Gamma(n+k) / (k! Gamma(1+n+2k))",
        plain2,
        Summand2D::new(1, 1, TailClass::poly(2, 0), TailClass::poly(2, 0), d4_term)
        .with_reduction(Summand1D::new(1, TailClass::poly(2, 0), d4_reduced)),
        rhs(&[(1, 2, Zeta(2))]),
        TOL_2D_REDUCED,
    ));

    let psi2 = "double sum with psi";
    v.push(two(
        "D5",
        "sum_{n>=0} sum_{k>=1} [gamma + psi(1+k)] / (k(n+k)(1+n+k))",
        psi2,
        Summand2D::new(0, 1, TailClass::poly(2, 0), TailClass::poly(2, 1), |n, k| h(1.0 + k) * kernel(n, k))
            .with_reduction(Summand1D::new(1, TailClass::poly(2, 1), |k| h(1.0 + k) / k * lemma(k - 1.0, k))),
        rhs(&[(2, 1, Zeta(3))]),
        TOL_2D_REDUCED,
    ));
    v.push(two(
        "D6",
        "sum_{n>=0} sum_{k>=1} [gamma + psi(1+n)] / (k(n+k)(1+n+k))",
        psi2,
        Summand2D::new(0, 1, TailClass::poly(2, 1), TailClass::poly(2, 1), |n, k| h(1.0 + n) * kernel(n, k))
            .with_reduction(Summand1D::new(0, TailClass::poly(2, 2), |n| h(1.0 + n) * d6_inner(n))),
        rhs(&[(2, 1, Zeta(3))]),
        TOL_2D_REDUCED,
    ));
    v.push(two(
        "D7",
        "sum_{n>=0} sum_{k>=1} [gamma + psi(1+n+k)] / (k(n+k)(1+n+k))",
        psi2,
        Summand2D::new(0, 1, TailClass::poly(2, 1), TailClass::poly(2, 1), |n, k| h(1.0 + n + k) * kernel(n, k)),
        rhs(&[(3, 1, Zeta(3))]),
        TOL_2D,
    ));
    v.push(two(
        "D8",
        "sum_{n>=0} sum_{k>=1} [gamma + psi(1+n+2k)] / (k(n+k)(1+n+k))",
        psi2,
        Summand2D::new(0, 1, TailClass::poly(2, 1), TailClass::poly(2, 1), |n, k| h(1.0 + n + 2.0 * k) * kernel(n, k)),
        rhs(&[(7, 2, Zeta(3))]),
        TOL_2D,
    ));
    v
}

/// D4 summand. The Γ ratios are paired so that every offset is the
/// smaller index: the row and outer tails probe `n` and `k` far beyond
/// each other, and the wrong pairing cancels two O(max(n, k)) logarithms.
fn d4_term(n: f64, k: f64) -> f64 {
    let log = if n >= k {
        // [Γ(2k)/Γ(k+1)]·[Γ(n+k)/Γ(n+2k+1)]
        gamma_ratio_log_offset(n + k, 1.0 + k).and_then(|r| Ok(r - gamma_ratio_log_offset(k + 1.0, k - 1.0)?))
    } else {
        // [Γ(2k)/Γ(2k+1+n)]·[Γ(k+n)/Γ(k+1)]
        gamma_ratio_log_offset(2.0 * k, 1.0 + n).and_then(|r| Ok(r - gamma_ratio_log_offset(k + 1.0, n - 1.0)?))
    };
    log.map(f64::exp).unwrap_or(f64::NAN)
}

/// Inner sum of D4 at outer index `k`, `Γ(2k)/k! · Γ(k)/Γ(1+2k)`, grouped
/// as `[Γ(2k)/Γ(2k+1)]·[Γ(k)/Γ(k+1)]` so nothing large is formed.
pub(crate) fn d4_reduced(k: f64) -> f64 {
    let a = gamma_ratio_log_offset(2.0 * k, 1.0).unwrap_or(f64::NAN);
    let b = gamma_ratio_log_offset(k, 1.0).unwrap_or(f64::NAN);
    (a + b).exp()
}

/// The same quantity assembled literally from the Γ-ratio lemma.
#[cfg(test)]
pub(crate) fn d4_via_lemma(k: f64) -> f64 {
    use crate::specfun::ln_gamma;
    let prefactor = (ln_gamma(2.0 * k).unwrap_or(f64::NAN) - ln_gamma(k + 1.0).unwrap_or(f64::NAN)).exp();
    prefactor * crate::summation::lemma_gamma_ratio_real(k).unwrap_or(f64::NAN)
}

/// `Σ_{k≥1} 1/(k(n+k)(1+n+k))`, i.e. `lemma(0, n) − lemma(0, n+1)`, in the
/// cancellation-free form `H_n/(n(n+1)) − 1/(n+1)²`.
pub(crate) fn d6_inner(n: f64) -> f64 {
    if n == 0.0 {
        return zeta_int(2).unwrap_or(f64::NAN) - 1.0;
    }
    h(1.0 + n) / (n * (n + 1.0)) - 1.0 / ((n + 1.0) * (n + 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d4_regrouping_matches_lemma() {
        for k in 1..=20 {
            let k = k as f64;
            let a = d4_reduced(k);
            let b = d4_via_lemma(k);
            assert!((a - b).abs() < 1e-12 * a, "k={k}: {a} vs {b}");
            assert!((a - 0.5 / (k * k)).abs() < 1e-14 * a);
        }
    }

    #[test]
    fn d6_inner_matches_lemma_difference() {
        for n in 0..40 {
            let n = n as f64;
            let want = lemma(0.0, n) - lemma(0.0, n + 1.0);
            assert!((d6_inner(n) - want).abs() < 1e-14, "n={n}");
        }
    }

    #[test]
    fn reductions_match_direct_inner_sums() {
        let cat = build();
        for id in ["D1", "D2", "D4", "D5"] {
            let e = cat.iter().find(|e| e.id == id).unwrap();
            let Lhs::Two(s) = &e.lhs else { panic!() };
            let r = s.reduction().unwrap();
            for k in [1u64, 2, 5, 17] {
                let (row, err) = s.row_sum(k as f64, 64).unwrap();
                let exact = r.term(k);
                assert!((row - exact).abs() <= err + 1e-14 * exact.abs(), "{id} k={k}: {row} vs {exact}");
            }
        }
    }
}
