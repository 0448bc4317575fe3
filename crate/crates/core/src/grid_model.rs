//! The six-component day-ahead grid model `(E1, E2, ω1, ω2, t1, t2)`.
//!
//! The first energy/time pair is a direct product of the exponents. The second
//! pair comes from the larger root ρ of the separability quadratic
//! `ρ² − (2+l_p1)ρ + (4−(2+l_p1)²)/2 − 2 = 0`. The map whose fixed points the
//! quadratic describes is never iterated; only the closed-form root is used.

use crate::error::{finite, ErrorKind, StageError};
use crate::lyapunov::LyapunovExponents;
use crate::quantity::Quantity;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeparabilityRoot {
    /// Linear stability factor of the fixed points.
    pub rho: f64,
    pub discriminant: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridModel {
    pub e1: f64,
    pub e2: f64,
    pub omega1: f64,
    pub omega2: f64,
    pub t1: f64,
    pub t2: f64,
}

impl GridModel {
    pub fn assemble(e1: f64, e2: f64, omega1: f64, omega2: f64, t1: f64, t2: f64) -> Self {
        Self {
            e1,
            e2,
            omega1,
            omega2,
            t1,
            t2,
        }
    }
}

/// `E1 = l_p1·l_p2`.
pub fn energy_e1(l_p1: f64, l_p2: f64) -> f64 {
    l_p1 * l_p2
}

/// `t1 = (1 + ((l_y1 + l_p1)/2)·((l_y2 + l_p2)/2)) / 4`.
pub fn time_t1(l: &LyapunovExponents) -> f64 {
    0.25 * (1.0 + ((l.l_y1 + l.l_p1) / 2.0) * ((l.l_y2 + l.l_p2) / 2.0))
}

pub fn first_pair(l: &LyapunovExponents) -> (f64, f64) {
    (energy_e1(l.l_p1, l.l_p2), time_t1(l))
}

/// Discriminant of the separability quadratic, evaluated as written:
/// `(2+l)² − 4((4−(2+l)²)/2 − 2)`. Algebraically this is `3(2+l)²`.
pub fn separability_discriminant(l_p1: f64) -> f64 {
    let s = 2.0 + l_p1;
    s * s - 4.0 * ((4.0 - s * s) / 2.0 - 2.0)
}

pub fn separability(l_p1: f64) -> Result<SeparabilityRoot, StageError> {
    let discriminant = finite(Quantity::Discriminant, separability_discriminant(l_p1))?;
    if discriminant < 0.0 {
        return Err(StageError::new(
            Quantity::Rho,
            ErrorKind::NegativeDiscriminant {
                value: discriminant,
            },
        ));
    }
    let rho = finite(Quantity::Rho, ((2.0 + l_p1) + discriminant.sqrt()) / 2.0)?;
    Ok(SeparabilityRoot { rho, discriminant })
}

/// `E2 = (ρ + √(ρ²−4))/2`, `t2 = 5(ρ − √(ρ²−4))`.
pub fn second_pair(rho: f64) -> Result<(f64, f64), StageError> {
    if rho < 2.0 || rho.is_nan() {
        return Err(StageError::new(
            Quantity::E2,
            ErrorKind::RhoBelowTwo { rho },
        ));
    }
    // (ρ−2)(ρ+2) keeps precision near ρ = 2
    let root = ((rho - 2.0) * (rho + 2.0)).sqrt();
    let e2 = finite(Quantity::E2, (rho + root) / 2.0)?;
    let t2 = finite(Quantity::T2, 5.0 * (rho - root))?;
    Ok((e2, t2))
}

/// `ω1 = 2·l_p1/t1`.
pub fn omega1(l_p1: f64, t1: f64) -> Result<f64, StageError> {
    if t1 == 0.0 {
        return Err(StageError::new(
            Quantity::Omega1,
            ErrorKind::ZeroTime {
                which: Quantity::T1,
            },
        ));
    }
    finite(Quantity::Omega1, 2.0 * l_p1 / t1)
}

/// `ω2 = 2·l_y1/t2`.
pub fn omega2(l_y1: f64, t2: f64) -> Result<f64, StageError> {
    if t2 == 0.0 {
        return Err(StageError::new(
            Quantity::Omega2,
            ErrorKind::ZeroTime {
                which: Quantity::T2,
            },
        ));
    }
    finite(Quantity::Omega2, 2.0 * l_y1 / t2)
}

pub fn frequencies(l: &LyapunovExponents, t1: f64, t2: f64) -> Result<(f64, f64), StageError> {
    Ok((omega1(l.l_p1, t1)?, omega2(l.l_y1, t2)?))
}

/// Builds the full grid model from a complete set of exponents.
pub fn grid_model(l: &LyapunovExponents) -> Result<GridModel, StageError> {
    let (e1, t1) = first_pair(l);
    let root = separability(l.l_p1)?;
    let (e2, t2) = second_pair(root.rho)?;
    let (w1, w2) = frequencies(l, t1, t2)?;
    Ok(GridModel::assemble(e1, e2, w1, w2, t1, t2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Stage;
    use proptest::prelude::*;

    const SQRT3: f64 = 1.732_050_807_568_877_2;

    fn exps(l_p1: f64, l_p2: f64, l_y1: f64, l_y2: f64) -> LyapunovExponents {
        LyapunovExponents {
            l_p1,
            l_p2,
            l_y1,
            l_y2,
            perm_a: 1.0,
        }
    }

    #[test]
    fn baseline_first_pair() {
        let (e1, t1) = first_pair(&exps(1.0, 1.0, 1.0, 2.0));
        assert_eq!(e1, 1.0);
        assert_eq!(t1, 0.625);
    }

    #[test]
    fn unit_potential_exponents_give_unit_energy() {
        for (ly1, ly2) in [(1.0, 2.0), (7.0, 3.5), (100.0, 2.0)] {
            assert_eq!(first_pair(&exps(1.0, 1.0, ly1, ly2)).0, 1.0);
        }
    }

    #[test]
    fn first_pair_substitution() {
        // 40-digit reference: t1 = 2.299059348758367311033730530077146613789
        let e2 = std::f64::consts::E.powi(2);
        let (e1, t1) = first_pair(&exps(1.035, 1.4, e2, 1.0 + 0.4f64.exp()));
        assert!((e1 - 1.449).abs() < 1e-15);
        assert!((t1 - 2.299_059_348_758_367_3).abs() < 1e-14, "t1 = {t1}");
    }

    #[test]
    fn separability_examples() {
        let r = separability(1.0).unwrap();
        assert_eq!(r.discriminant, 27.0);
        assert!((r.rho - 4.098_076_211_353_316).abs() < 1e-14);

        let r = separability(0.0).unwrap();
        assert_eq!(r.discriminant, 12.0);
        assert!((r.rho - (1.0 + SQRT3)).abs() < 1e-14);
    }

    #[test]
    fn rho_closed_form_on_grid() {
        for i in 0..100 {
            let l = 1.0 + 2.0 * i as f64 / 99.0;
            let r = separability(l).unwrap();
            let expected = (2.0 + l) * (1.0 + SQRT3) / 2.0;
            assert!((r.rho - expected).abs() <= 1e-12 * expected);
            let disc = 3.0 * (2.0 + l) * (2.0 + l);
            assert!((r.discriminant - disc).abs() <= 1e-9 * disc);
            assert!(r.rho >= (1.0 + SQRT3) * 1.5 * (1.0 - 1e-15));
        }
    }

    #[test]
    fn second_pair_examples() {
        assert_eq!(second_pair(2.0).unwrap(), (1.0, 10.0));
        assert_eq!(second_pair(2.5).unwrap(), (2.0, 5.0));
        let (e2, t2) = second_pair(4.098_076_211_353_316).unwrap();
        assert!((e2 - 3.837_489).abs() < 1e-6);
        assert!((t2 - 2.605_870).abs() < 1e-6);
    }

    #[test]
    fn rho_below_two_is_guarded() {
        let err = second_pair(1.999).unwrap_err();
        assert_eq!(err.kind, ErrorKind::RhoBelowTwo { rho: 1.999 });
        assert_eq!((err.stage, err.equation), (Stage::GridModel, 8));
        assert!(second_pair(f64::NAN).is_err());
    }

    #[test]
    fn frequency_examples() {
        assert_eq!(omega1(1.0, 0.625).unwrap(), 3.2);
        assert_eq!(omega2(1.0, 10.0).unwrap(), 0.2);
        let err = omega1(1.0, 0.0).unwrap_err();
        assert_eq!(
            err.kind,
            ErrorKind::ZeroTime {
                which: Quantity::T1
            }
        );
        let err = omega2(1.0, 0.0).unwrap_err();
        assert_eq!(
            err.kind,
            ErrorKind::ZeroTime {
                which: Quantity::T2
            }
        );
    }

    #[test]
    fn assemble_is_identity_packing() {
        let m = GridModel::assemble(1.0, 1.0, 3.2, 0.2, 0.625, 10.0);
        assert_eq!(
            m,
            GridModel {
                t2: 10.0,
                t1: 0.625,
                omega2: 0.2,
                omega1: 3.2,
                e2: 1.0,
                e1: 1.0
            }
        );
    }

    proptest! {
        #[test]
        fn root_product_identity(l_p1 in 1.0f64..3.0) {
            let r = separability(l_p1).unwrap();
            let (e2, t2) = second_pair(r.rho).unwrap();
            prop_assert!((e2 * t2 / 10.0 - 1.0).abs() <= 1e-9);
            prop_assert!(e2 >= 1.0 && t2 > 0.0);
        }

        #[test]
        fn t1_is_monotone_in_each_exponent(
            base in proptest::array::uniform4(1.0f64..10.0),
            bump in 0.0f64..5.0,
            which in 0usize..4,
        ) {
            let l = exps(base[0], base[1], base[2], base[3] + 1.0);
            let mut bumped = base;
            bumped[which] += bump;
            let lb = exps(bumped[0], bumped[1], bumped[2], bumped[3] + 1.0);
            prop_assert!(time_t1(&lb) >= time_t1(&l));
            prop_assert!(time_t1(&l) > 0.25);
        }
    }
}
