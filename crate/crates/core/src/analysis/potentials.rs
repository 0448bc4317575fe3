//! Energy and frequency solutions of the ultra-hyperbolic equation with an
//! impulse initial condition, and the expected free-trade volume.

use std::f64::consts::PI;

use crate::error::{finite, ErrorKind, StageError};
use crate::quantity::Quantity;

/// `(1/4)²`, the regularizer in both denominators of the energy solution.
const QUARTER_SQUARED: f64 = 1.0 / 16.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Potentials {
    /// Impulse size at the initial moment; also the edge-deletion probability.
    pub v1: f64,
    pub w1: f64,
    pub u_s: f64,
    pub u_p: f64,
    pub p_x: f64,
}

impl Potentials {
    pub fn v1_in_unit_interval(&self) -> bool {
        (0.0..=1.0).contains(&self.v1)
    }
}

fn require_lp1(quantity: Quantity, l_p1: f64) -> Result<(), StageError> {
    if l_p1 == 0.0 {
        Err(StageError::new(quantity, ErrorKind::ZeroLp1))
    } else {
        Ok(())
    }
}

/// `v1 = (l+t)/(l((l+t)² + 1/16)) + (l−t)/(l((l−t)² + 1/16))` with `l = l_p1`, `t = t1`.
pub fn impulse_v1(l_p1: f64, t1: f64) -> Result<f64, StageError> {
    require_lp1(Quantity::V1, l_p1)?;
    let plus = l_p1 + t1;
    let minus = l_p1 - t1;
    let v = plus / (l_p1 * (plus * plus + QUARTER_SQUARED))
        + minus / (l_p1 * (minus * minus + QUARTER_SQUARED));
    finite(Quantity::V1, v)
}

/// `w1 = (3/l) ln(((l+t)² + 1/16) / ((l−t)² + 1/16))`.
pub fn log_term_w1(l_p1: f64, t1: f64) -> Result<f64, StageError> {
    require_lp1(Quantity::W1, l_p1)?;
    let plus = l_p1 + t1;
    let minus = l_p1 - t1;
    let ratio = (plus * plus + QUARTER_SQUARED) / (minus * minus + QUARTER_SQUARED);
    finite(Quantity::W1, (3.0 / l_p1) * ratio.ln())
}

/// `U_s = l_y1²·v1 + w1`.
pub fn energy_u_s(l_y1: f64, v1: f64, w1: f64) -> Result<f64, StageError> {
    finite(Quantity::Us, l_y1 * l_y1 * v1 + w1)
}

/// Returns `(v1, w1, U_s)`.
pub fn energy_potential(l_p1: f64, l_y1: f64, t1: f64) -> Result<(f64, f64, f64), StageError> {
    let v1 = impulse_v1(l_p1, t1)?;
    let w1 = log_term_w1(l_p1, t1)?;
    Ok((v1, w1, energy_u_s(l_y1, v1, w1)?))
}

/// `p_x = 2E1 − (ω1² + ω2²) − 4`.
pub fn momentum_p_x(e1: f64, omega1: f64, omega2: f64) -> Result<f64, StageError> {
    finite(
        Quantity::Px,
        2.0 * e1 - (omega1 * omega1 + omega2 * omega2) - 4.0,
    )
}

/// `U_p = −(1/2 + 1/(4v1))·(1 + p_x·v1/t1)·exp(v1·t1)`.
pub fn frequency_u_p(p_x: f64, v1: f64, t1: f64) -> Result<f64, StageError> {
    if v1 == 0.0 {
        return Err(StageError::new(Quantity::Up, ErrorKind::ZeroImpulse));
    }
    if t1 == 0.0 {
        return Err(StageError::new(
            Quantity::Up,
            ErrorKind::ZeroTime {
                which: Quantity::T1,
            },
        ));
    }
    let u = -(0.5 + 1.0 / (4.0 * v1)) * (1.0 + p_x * v1 / t1) * (v1 * t1).exp();
    finite(Quantity::Up, u)
}

/// Returns `(p_x, U_p)`.
pub fn frequency_potential(
    e1: f64,
    omega1: f64,
    omega2: f64,
    v1: f64,
    t1: f64,
) -> Result<(f64, f64), StageError> {
    let p_x = momentum_p_x(e1, omega1, omega2)?;
    Ok((p_x, frequency_u_p(p_x, v1, t1)?))
}

/// Expected free-trade volume in percent, reported raw.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TradeVolume {
    pub pct: f64,
}

impl TradeVolume {
    pub fn valid_percentage(&self) -> bool {
        (0.0..=100.0).contains(&self.pct)
    }
}

/// `v_m = 100 − 9π² / (4·(U_s/(2π))²)`.
pub fn trade_volume(u_s: f64) -> Result<TradeVolume, StageError> {
    if u_s == 0.0 {
        return Err(StageError::new(
            Quantity::TradeVolume,
            ErrorKind::ZeroPotential,
        ));
    }
    let scaled = u_s / (2.0 * PI);
    let pct = finite(
        Quantity::TradeVolume,
        100.0 - 9.0 * PI * PI / (4.0 * scaled * scaled),
    )?;
    Ok(TradeVolume { pct })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Stage;

    #[test]
    fn energy_potential_at_unit_point() {
        let (v1, w1, u_s) = energy_potential(1.0, 1.0, 1.0).unwrap();
        assert!((v1 - 32.0 / 65.0).abs() < 1e-16);
        // 3 ln 65 = 12.52316180968691133196274032437451873299
        assert!((w1 - 12.523_161_809_686_911).abs() < 1e-14);
        assert!((u_s - (v1 + w1)).abs() < 1e-15);
    }

    #[test]
    fn zero_time_is_symmetric() {
        for l in [0.5, 1.0, 2.0] {
            let (v1, w1, _) = energy_potential(l, 3.0, 0.0).unwrap();
            assert_eq!(w1, 0.0);
            let expected = 2.0 * l / (l * (l * l + 1.0 / 16.0));
            assert!((v1 - expected).abs() <= 1e-15 * expected);
        }
    }

    #[test]
    fn zero_lp1_is_guarded() {
        let err = energy_potential(0.0, 1.0, 1.0).unwrap_err();
        assert_eq!(err.kind, ErrorKind::ZeroLp1);
        assert_eq!((err.stage, err.equation), (Stage::GridAnalysis, 11));
    }

    #[test]
    fn vanishing_momentum_collapses_u_p() {
        let (p_x, u_p) = frequency_potential(2.0, 0.0, 0.0, 0.3, 1.5).unwrap();
        assert_eq!(p_x, 0.0);
        let expected = -(0.5 + 1.0 / 1.2) * (0.45f64).exp();
        assert!((u_p - expected).abs() <= 1e-15 * expected.abs());
    }

    #[test]
    fn u_p_singularities() {
        let err = frequency_u_p(1.0, 0.0, 1.0).unwrap_err();
        assert_eq!(err.kind, ErrorKind::ZeroImpulse);
        assert_eq!(err.equation, 12);
        let err = frequency_u_p(1.0, 0.5, 0.0).unwrap_err();
        assert_eq!(
            err.kind,
            ErrorKind::ZeroTime {
                which: Quantity::T1
            }
        );
    }

    #[test]
    fn u_p_overflow_is_not_infinity() {
        let err = frequency_u_p(1.0, 1.0, 1e4).unwrap_err();
        assert_eq!(
            err.kind,
            ErrorKind::NonFinite {
                quantity: Quantity::Up
            }
        );
    }

    #[test]
    fn trade_volume_examples() {
        let v = trade_volume(1e6).unwrap();
        assert!((v.pct - 100.0).abs() < 1e-3);
        assert!(v.valid_percentage());

        let v = trade_volume(3.0 * PI * PI).unwrap();
        assert!((v.pct - 99.0).abs() < 1e-12);

        let v = trade_volume(0.1).unwrap();
        assert!(v.pct < -1000.0);
        assert!(!v.valid_percentage());

        // the formula depends on U_s²
        assert_eq!(trade_volume(-5.0).unwrap(), trade_volume(5.0).unwrap());

        let err = trade_volume(0.0).unwrap_err();
        assert_eq!(err.kind, ErrorKind::ZeroPotential);
        assert_eq!(err.equation, 13);
    }
}
