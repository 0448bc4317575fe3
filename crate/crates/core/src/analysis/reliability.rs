//! Edge-deletion reliabilities of the star (K6) and triangle (K3,3) grid
//! approximations, and the quenched-disorder probability of critical behaviour.

use std::f64::consts::PI;

use crate::config::UpLogMode;
use crate::error::{finite, ErrorKind, Potential, StageError};
use crate::exact;
use crate::quantity::Quantity;

/// K6 reliability coefficients, constant term first (degree 15).
pub const STAR_COEFFS: [f64; 16] = [
    1.0, 0.0, 0.0, 0.0, 0.0, -6.0, 0.0, 0.0, -15.0, 20.0, 0.0, 120.0, -90.0, -270.0, 360.0, -120.0,
];

/// K3,3 reliability coefficients, constant term first (degree 12).
pub const TRIANGLE_COEFFS: [f64; 13] = [
    1.0, 0.0, -4.0, -16.0, 21.0, 96.0, 0.0, -960.0, 2331.0, -2656.0, 1668.0, -560.0, 79.0,
];

/// Inverse-temperature divisor of the quenched-disorder exponent.
pub const QUENCH_CONSTANT: f64 = 1.261_060_863 * PI;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReliabilityProbabilities {
    pub p_s: f64,
    pub p_t: f64,
    pub p_g: f64,
}

impl ReliabilityProbabilities {
    pub fn out_of_range(&self) -> [bool; 3] {
        [self.p_s, self.p_t, self.p_g].map(|p| !(0.0..=1.0).contains(&p))
    }
}

/// Horner evaluation, coefficients in ascending degree. Accurate to about an
/// ulp everywhere, including next to the multiple root at 1, where it
/// switches to exact arithmetic.
pub fn horner(coeffs: &[f64], x: f64) -> f64 {
    exact::horner(coeffs, x)
}

/// Term-by-term evaluation `Σ c_k x^k` in exact arithmetic, kept as an
/// independent check on [`horner`].
pub fn power_sum(coeffs: &[f64], x: f64) -> f64 {
    exact::power_sum(coeffs, x)
}

pub fn star_reliability(v1: f64) -> f64 {
    horner(&STAR_COEFFS, v1)
}

pub fn triangle_reliability(v1: f64) -> f64 {
    horner(&TRIANGLE_COEFFS, v1)
}

fn log_of(which: Potential, value: f64, mode: UpLogMode) -> Result<f64, StageError> {
    let usable = match mode {
        UpLogMode::Strict => value > 0.0,
        UpLogMode::Absolute => value != 0.0 && !value.is_nan(),
    };
    if !usable {
        return Err(StageError::new(
            Quantity::Pg,
            ErrorKind::NonPositivePotential { which, value },
        ));
    }
    Ok(value.abs().ln())
}

/// `p_g = 1 − (1/U_s)·exp(−4(ln U_s − ln U_p)²·E1 / (1.261060863π))`.
pub fn quenched_probability(
    u_s: f64,
    u_p: f64,
    e1: f64,
    mode: UpLogMode,
) -> Result<f64, StageError> {
    let ln_s = log_of(Potential::Energy, u_s, mode)?;
    let ln_p = log_of(Potential::Frequency, u_p, mode)?;
    let d = ln_s - ln_p;
    finite(
        Quantity::Pg,
        1.0 - (1.0 / u_s) * (-4.0 * d * d * e1 / QUENCH_CONSTANT).exp(),
    )
}
