//! Exact right-hand sides: rational linear combinations over the basis
//! `{1, ζ(m), π·Cl₂(aπ)}`.

mod rational;

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::accel::CompensatedSum;
use crate::error::{domain, Result};
use crate::specfun::{clausen2, zeta_int};

pub use rational::Rational;

/// One element of the constant basis.
///
/// The derived ordering (`One`, then `Zeta` by argument, then `PiCl2` by
/// angle) is the rendering order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisConstant {
    One,
    Zeta(u32),
    /// `π·Cl₂(angle·π)` with `0 < angle < 1` in canonical form.
    PiCl2(Rational),
}

impl BasisConstant {
    pub fn value(&self) -> f64 {
        match *self {
            BasisConstant::One => 1.0,
            BasisConstant::Zeta(m) => zeta_int(m).expect("basis zeta argument is >= 2"),
            BasisConstant::PiCl2(a) => PI * clausen2(a.to_f64() * PI),
        }
    }
}

impl fmt::Display for BasisConstant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisConstant::One => write!(f, "1"),
            BasisConstant::Zeta(m) => write!(f, "zeta({m})"),
            BasisConstant::PiCl2(a) => write!(f, "pi*Cl2({a}*pi)"),
        }
    }
}

/// Result of reducing `Cl₂(aπ)` to a canonical angle.
///
/// `Cl₂(aπ) = sign · factor · Cl₂(angle·π)`; when `sign` is 0 the value is
/// zero and `angle` is `None`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CanonicalAngle {
    pub sign: i8,
    pub angle: Option<Rational>,
    pub factor: Rational,
}

/// Reduces `Cl₂(aπ)` using periodicity, oddness, the zeros at 0 and π, and
/// `Cl₂(2π/3) = (2/3) Cl₂(π/3)`.
pub fn canonicalize_angle(a: Rational) -> CanonicalAngle {
    let two = Rational::integer(2);
    // a mod 2, in [0, 2)
    let turns = a.floor().div_euclid(2);
    let mut r = a
        .checked_sub(Rational::integer(2 * turns))
        .expect("reduction of a reduced rational cannot overflow");
    let mut sign = 1i8;
    if r > Rational::ONE {
        sign = -1;
        r = two.checked_sub(r).expect("r is in (1, 2)");
    }
    if r.is_zero() || r == Rational::ONE {
        return CanonicalAngle {
            sign: 0,
            angle: None,
            factor: Rational::ONE,
        };
    }
    let two_thirds = Rational::new(2, 3).unwrap();
    if r == two_thirds {
        return CanonicalAngle {
            sign,
            angle: Some(Rational::new(1, 3).unwrap()),
            factor: two_thirds,
        };
    }
    CanonicalAngle {
        sign,
        angle: Some(r),
        factor: Rational::ONE,
    }
}

/// Exact rational combination of basis constants. Never stores a zero
/// coefficient, and every `PiCl2` angle is canonical.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ClosedForm {
    terms: BTreeMap<BasisConstant, Rational>,
}

impl ClosedForm {
    pub fn zero() -> Self {
        Self::default()
    }

    /// A rational constant.
    pub fn rational(q: Rational) -> Self {
        let mut cf = Self::zero();
        if !q.is_zero() {
            cf.terms.insert(BasisConstant::One, q);
        }
        cf
    }

    /// `q·ζ(m)`.
    pub fn zeta(q: Rational, m: u32) -> Result<Self> {
        if m < 2 {
            return domain("ClosedForm::zeta", format!("zeta({m}) is not a basis constant"));
        }
        let mut cf = Self::zero();
        if !q.is_zero() {
            cf.terms.insert(BasisConstant::Zeta(m), q);
        }
        Ok(cf)
    }

    /// `q·π·Cl₂(aπ)` for any rational `a`, canonicalized.
    pub fn pi_cl2(q: Rational, a: Rational) -> Result<Self> {
        let c = canonicalize_angle(a);
        let mut cf = Self::zero();
        if let (Some(angle), false) = (c.angle, q.is_zero()) {
            let coef = q.checked_mul(c.factor)?;
            let coef = if c.sign < 0 { coef.checked_neg()? } else { coef };
            cf.terms.insert(BasisConstant::PiCl2(angle), coef);
        }
        Ok(cf)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, c: &BasisConstant) -> Rational {
        self.terms.get(c).copied().unwrap_or(Rational::ZERO)
    }

    /// Terms in rendering order.
    pub fn terms(&self) -> impl Iterator<Item = (&BasisConstant, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Exact sum of two closed forms.
pub fn cf_add(a: &ClosedForm, b: &ClosedForm) -> Result<ClosedForm> {
    let mut out = a.clone();
    for (c, q) in &b.terms {
        let sum = out.coefficient(c).checked_add(*q)?;
        if sum.is_zero() {
            out.terms.remove(c);
        } else {
            out.terms.insert(*c, sum);
        }
    }
    Ok(out)
}

/// `q·a`, exactly.
pub fn cf_scale(q: Rational, a: &ClosedForm) -> Result<ClosedForm> {
    if q.is_zero() {
        return Ok(ClosedForm::zero());
    }
    let mut out = ClosedForm::zero();
    for (c, x) in &a.terms {
        out.terms.insert(*c, x.checked_mul(q)?);
    }
    Ok(out)
}

/// Numeric value of a closed form.
pub fn cf_eval(a: &ClosedForm) -> f64 {
    let mut s = CompensatedSum::new();
    for (c, q) in &a.terms {
        s.add(q.to_f64() * c.value());
    }
    s.value()
}

/// Structural equality of canonical forms.
pub fn cf_equal(a: &ClosedForm, b: &ClosedForm) -> bool {
    a.terms == b.terms
}

/// Diagnostic companion to [`cf_equal`]: `|cf_eval(a) − cf_eval(b)|`.
pub fn cf_numeric_distance(a: &ClosedForm, b: &ClosedForm) -> f64 {
    (cf_eval(a) - cf_eval(b)).abs()
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (c, q)) in self.terms.iter().enumerate() {
            let neg = q.signum() < 0;
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = if neg { q.checked_neg().map_err(|_| fmt::Error)? } else { *q };
            match c {
                BasisConstant::One => write!(f, "{mag}")?,
                _ if mag == Rational::ONE => write!(f, "{c}")?,
                _ => write!(f, "{mag}*{c}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for ClosedForm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
