//! Riesz-kernel distances between the day-ahead and the critical grid behaviour.
//!
//! Gamma is only ever needed at 1/2, 3/2 and 3, so those values are folded
//! into the constants below instead of pulling in a general gamma function.

use std::f64::consts::PI;

use crate::error::{finite, ErrorKind, StageError};
use crate::grid_model::GridModel;
use crate::quantity::Quantity;

/// `Γ(1/2) / (√π · 2⁶ · Γ(3))` with `Γ(1/2) = √π`, `Γ(3) = 2`.
pub const ELLIPTIC_SCALE: f64 = 1.0 / 128.0;

/// `2 / (32π² · Γ(3) · Γ(3/2))` with `Γ(3/2) = √π/2`, i.e. `1/(16π^{5/2})`.
pub fn hyperbolic_scale() -> f64 {
    1.0 / (16.0 * PI.powf(2.5))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Distances {
    pub r_e: f64,
    pub r_h: f64,
    pub r_c: f64,
}

/// `R_e = 1 / (128·√(U_s − U_p))`.
pub fn elliptic_distance(u_s: f64, u_p: f64) -> Result<f64, StageError> {
    let gap = u_s - u_p;
    if gap <= 0.0 || gap.is_nan() {
        return Err(StageError::new(
            Quantity::Re,
            ErrorKind::NonPositiveGap { gap },
        ));
    }
    finite(Quantity::Re, ELLIPTIC_SCALE / gap.sqrt())
}

/// `ω1² + ω2² + E1² − E2² − t1²`.
pub fn hyperbolic_radicand(omega1: f64, omega2: f64, e1: f64, e2: f64, t1: f64) -> f64 {
    omega1 * omega1 + omega2 * omega2 + e1 * e1 - e2 * e2 - t1 * t1
}

/// `R_h = √radicand / (16π^{5/2})`.
pub fn hyperbolic_distance_from_radicand(radicand: f64) -> Result<f64, StageError> {
    if radicand < 0.0 || radicand.is_nan() {
        return Err(StageError::new(
            Quantity::Rh,
            ErrorKind::NegativeRadicand { radicand },
        ));
    }
    finite(Quantity::Rh, radicand.sqrt() * hyperbolic_scale())
}

pub fn hyperbolic_distance(m: &GridModel) -> Result<f64, StageError> {
    hyperbolic_distance_from_radicand(hyperbolic_radicand(m.omega1, m.omega2, m.e1, m.e2, m.t1))
}

/// `R_c = exp(−v1·l_p1) / (10·l_p1)`.
pub fn critical_distance(v1: f64, l_p1: f64) -> Result<f64, StageError> {
    if l_p1 == 0.0 {
        return Err(StageError::new(Quantity::Rc, ErrorKind::ZeroLp1));
    }
    finite(Quantity::Rc, (-v1 * l_p1).exp() / (10.0 * l_p1))
}
