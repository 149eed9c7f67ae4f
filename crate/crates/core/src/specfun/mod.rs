//! Special-function evaluators on the positive real axis (and, for log Γ,
//! the right half-plane).
//!
//! Every function here is a pure function of its arguments. Non-positive
//! arguments to the Γ/ψ family are rejected, not reflected.

mod bernoulli;
mod clausen;
mod digamma;
mod gamma;
mod zeta;

pub use clausen::{catalan, clausen2};
pub use digamma::{digamma, polygamma, trigamma};
pub use gamma::{gamma_ratio_log, gamma_ratio_log_offset, ln_beta, ln_gamma, log_gamma_complex};
pub use zeta::{polylog, zeta_int};


/// Euler's constant γ.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Returns γ.
pub fn euler_gamma() -> f64 {
    EULER_GAMMA
}

/// `γ + ψ(x)`, the combination that appears in every Euler-type summand.
pub fn harmonic(x: f64) -> crate::Result<f64> {
    Ok(digamma(x)? + EULER_GAMMA)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euler_gamma_anchor() {
        assert_eq!(format!("{:.6}", euler_gamma()), "0.577216");
        assert_eq!(euler_gamma().to_bits(), euler_gamma().to_bits());
    }

    #[test]
    fn digamma_one_is_minus_gamma() {
        assert!((digamma(1.0).unwrap() + euler_gamma()).abs() < 1e-15);
    }
}
