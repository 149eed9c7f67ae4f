use crate::closed_form::{cf_add, ClosedForm, Rational};
use crate::error::{domain, Result};

/// Closed form of `Σ_{n≥1} [γ+ψ(1+kn)]/n²` (or its alternating version with
/// an extra `(−1)ⁿ`):
///
/// * plain: `(k²/2 + 3/(2k)) ζ(3) + π Σ_{j=1}^{k−1} j Cl₂(2jπ/k)`
/// * alternating: `(k²/2 − 9/(8k)) ζ(3) + π Σ_{j=1}^{k−1} j Cl₂((2j+1)π/k)`
///
/// The Clausen angles are canonicalized, so the result is directly
/// comparable with hand-simplified forms.
pub fn theorem1_closed_form(k: u32, alternating: bool) -> Result<ClosedForm> {
    if k == 0 {
        return domain("theorem1_closed_form", "requires k >= 1");
    }
    let k = k as i64;
    let k3 = k.checked_mul(k).and_then(|x| x.checked_mul(k));
    let Some(k3) = k3 else {
        return Err(crate::Error::Overflow("theorem1_closed_form"));
    };
    let zeta3 = if alternating {
        Rational::new(4 * k3 - 9, 8 * k)?
    } else {
        Rational::new(k3 + 3, 2 * k)?
    };
    let mut cf = ClosedForm::zeta(zeta3, 3)?;
    for j in 1..k {
        let angle = if alternating {
            Rational::new(2 * j + 1, k)?
        } else {
            Rational::new(2 * j, k)?
        };
        cf = cf_add(&cf, &ClosedForm::pi_cl2(Rational::integer(j), angle)?)?;
    }
    Ok(cf)
}
