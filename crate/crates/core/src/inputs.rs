//! Day-ahead parameter records and the piecewise time scaling.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Times strictly below this many hours are doubled before scaling.
pub const DOUBLING_THRESHOLD_HOURS: f64 = 9.5;

/// Times above this are accepted but reported as suspicious.
pub const PLAUSIBLE_MAX_HOURS: f64 = 48.0;

/// One of the seven input fields, in canonical column order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    T61,
    T62,
    T16,
    T24,
    Kc,
    C0,
    Delta,
}

impl Field {
    pub const ALL: [Field; 7] = [
        Field::T61,
        Field::T62,
        Field::T16,
        Field::T24,
        Field::Kc,
        Field::C0,
        Field::Delta,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Field::T61 => "t6_1",
            Field::T62 => "t6_2",
            Field::T16 => "t16",
            Field::T24 => "t24",
            Field::Kc => "k_c",
            Field::C0 => "c_0",
            Field::Delta => "delta",
        }
    }

    pub fn is_time(self) -> bool {
        matches!(self, Field::T61 | Field::T62 | Field::T16 | Field::T24)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown parameter `{0}` (expected one of t6_1, t6_2, t16, t24, k_c, c_0, delta)")]
pub struct UnknownField(pub String);

impl FromStr for Field {
    type Err = UnknownField;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Field::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| UnknownField(s.to_string()))
    }
}

/// An unvalidated record of the seven daily scalars.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RawParameters {
    pub t6_1: f64,
    pub t6_2: f64,
    pub t16: f64,
    pub t24: f64,
    pub k_c: f64,
    pub c_0: f64,
    pub delta: f64,
}

impl RawParameters {
    pub fn get(&self, field: Field) -> f64 {
        match field {
            Field::T61 => self.t6_1,
            Field::T62 => self.t6_2,
            Field::T16 => self.t16,
            Field::T24 => self.t24,
            Field::Kc => self.k_c,
            Field::C0 => self.c_0,
            Field::Delta => self.delta,
        }
    }

    pub fn set(&mut self, field: Field, value: f64) {
        let slot = match field {
            Field::T61 => &mut self.t6_1,
            Field::T62 => &mut self.t6_2,
            Field::T16 => &mut self.t16,
            Field::T24 => &mut self.t24,
            Field::Kc => &mut self.k_c,
            Field::C0 => &mut self.c_0,
            Field::Delta => &mut self.delta,
        };
        *slot = value;
    }
}

impl From<[f64; 7]> for RawParameters {
    fn from(v: [f64; 7]) -> Self {
        Self {
            t6_1: v[0],
            t6_2: v[1],
            t16: v[2],
            t24: v[3],
            k_c: v[4],
            c_0: v[5],
            delta: v[6],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not finite")]
    NonFinite(Field),
    #[error("{0} must be a positive time")]
    NonPositiveTime(Field),
    #[error("{0} must not be negative")]
    NegativeParameter(Field),
}

impl FieldError {
    pub fn field(&self) -> Field {
        match *self {
            FieldError::NonFinite(f)
            | FieldError::NonPositiveTime(f)
            | FieldError::NegativeParameter(f) => f,
        }
    }
}

/// Every constraint a raw record violates, in field order.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ValidationError {
    pub violations: Vec<FieldError>,
}

impl fmt::Display for ValidationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("invalid parameters: ")?;
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Non-fatal observations about a valid record.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RangeWarning {
    ImplausibleHours { field: Field, hours: f64 },
}

impl fmt::Display for RangeWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RangeWarning::ImplausibleHours { field, hours } => {
                write!(f, "{field} = {hours} h exceeds {PLAUSIBLE_MAX_HOURS} h")
            }
        }
    }
}

/// A validated record: all fields finite, times positive, the rest non-negative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InputParameters(RawParameters);

impl InputParameters {
    pub fn t6_1(&self) -> f64 {
        self.0.t6_1
    }
    pub fn t6_2(&self) -> f64 {
        self.0.t6_2
    }
    pub fn t16(&self) -> f64 {
        self.0.t16
    }
    pub fn t24(&self) -> f64 {
        self.0.t24
    }
    pub fn k_c(&self) -> f64 {
        self.0.k_c
    }
    pub fn c_0(&self) -> f64 {
        self.0.c_0
    }
    pub fn delta(&self) -> f64 {
        self.0.delta
    }

    pub fn get(&self, field: Field) -> f64 {
        self.0.get(field)
    }

    pub fn raw(&self) -> RawParameters {
        self.0
    }

    /// Copy of this record with one field replaced, revalidated.
    pub fn with(&self, field: Field, value: f64) -> Result<Self, ValidationError> {
        let mut raw = self.0;
        raw.set(field, value);
        validate(raw)
    }

    pub fn range_warnings(&self) -> Vec<RangeWarning> {
        Field::ALL
            .into_iter()
            .filter(|f| f.is_time() && self.get(*f) > PLAUSIBLE_MAX_HOURS)
            .map(|field| RangeWarning::ImplausibleHours {
                field,
                hours: self.get(field),
            })
            .collect()
    }
}

impl TryFrom<RawParameters> for InputParameters {
    type Error = ValidationError;

    fn try_from(raw: RawParameters) -> Result<Self, Self::Error> {
        validate(raw)
    }
}

/// Checks every field and reports all violations at once.
pub fn validate(raw: RawParameters) -> Result<InputParameters, ValidationError> {
    let violations: Vec<FieldError> = Field::ALL
        .into_iter()
        .filter_map(|field| {
            let v = raw.get(field);
            if !v.is_finite() {
                Some(FieldError::NonFinite(field))
            } else if field.is_time() && v <= 0.0 {
                Some(FieldError::NonPositiveTime(field))
            } else if v < 0.0 {
                Some(FieldError::NegativeParameter(field))
            } else {
                None
            }
        })
        .collect();
    if violations.is_empty() {
        Ok(InputParameters(raw))
    } else {
        Err(ValidationError { violations })
    }
}

/// Dimensionless synchronization times.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledTimes {
    pub t6_1_s: f64,
    pub t6_2_s: f64,
    pub t16_s: f64,
    pub t24_s: f64,
}

/// `2T/10` below the threshold, `T/10` at or above it.
fn scale_with_doubling(hours: f64) -> f64 {
    if hours < DOUBLING_THRESHOLD_HOURS {
        2.0 * hours / 10.0
    } else {
        hours / 10.0
    }
}

/// Only T6,1 and T16 take the doubling branch; T6,2 and T24 are always divided by 10.
pub fn scale_times(p: &InputParameters) -> ScaledTimes {
    ScaledTimes {
        t6_1_s: scale_with_doubling(p.t6_1()),
        t6_2_s: p.t6_2() / 10.0,
        t16_s: scale_with_doubling(p.t16()),
        t24_s: p.t24() / 10.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn baseline() -> RawParameters {
        [6.0, 6.0, 16.0, 24.0, 4.0, 50.0, 0.035].into()
    }

    #[test]
    fn baseline_is_valid() {
        let p = validate(baseline()).unwrap();
        assert_eq!(p.delta(), 0.035);
        assert!(p.range_warnings().is_empty());
    }

    #[test]
    fn zero_time_is_rejected() {
        let mut raw = baseline();
        raw.t6_1 = 0.0;
        let err = validate(raw).unwrap_err();
        assert_eq!(
            err.violations,
            vec![FieldError::NonPositiveTime(Field::T61)]
        );
    }

    #[test]
    fn nan_delta_is_rejected() {
        let mut raw = baseline();
        raw.delta = f64::NAN;
        let err = validate(raw).unwrap_err();
        assert_eq!(err.violations, vec![FieldError::NonFinite(Field::Delta)]);
    }

    #[test]
    fn every_violation_is_named() {
        let raw: RawParameters = [-1.0, f64::INFINITY, 16.0, 0.0, -4.0, -0.5, -0.1].into();
        let err = validate(raw).unwrap_err();
        assert_eq!(
            err.violations,
            vec![
                FieldError::NonPositiveTime(Field::T61),
                FieldError::NonFinite(Field::T62),
                FieldError::NonPositiveTime(Field::T24),
                FieldError::NegativeParameter(Field::Kc),
                FieldError::NegativeParameter(Field::C0),
                FieldError::NegativeParameter(Field::Delta),
            ]
        );
        assert!(err.to_string().contains("k_c must not be negative"));
    }

    #[test]
    fn zero_scalars_are_allowed() {
        let raw: RawParameters = [6.0, 6.0, 16.0, 24.0, 0.0, 0.0, 0.0].into();
        assert!(validate(raw).is_ok());
    }

    #[test]
    fn long_hours_only_warn() {
        let mut raw = baseline();
        raw.t24 = 60.0;
        let p = validate(raw).unwrap();
        assert_eq!(
            p.range_warnings(),
            vec![RangeWarning::ImplausibleHours {
                field: Field::T24,
                hours: 60.0
            }]
        );
    }

    #[test]
    fn scaling_examples() {
        let p = validate(baseline()).unwrap();
        let s = scale_times(&p);
        assert_eq!(s.t6_1_s, 1.2);
        assert_eq!(s.t6_2_s, 0.6);
        assert_eq!(s.t16_s, 1.6);
        assert_eq!(s.t24_s, 2.4);

        let p = p.with(Field::T61, 9.5).unwrap();
        assert_eq!(scale_times(&p).t6_1_s, 0.95);
    }

    #[test]
    fn undivided_fields_never_double() {
        let p = validate([3.0, 3.0, 3.0, 3.0, 1.0, 1.0, 0.0].into()).unwrap();
        let s = scale_times(&p);
        assert_eq!(s.t6_1_s, 0.6);
        assert_eq!(s.t16_s, 0.6);
        assert_eq!(s.t6_2_s, 3.0 / 10.0);
        assert_eq!(s.t24_s, 3.0 / 10.0);
    }

    #[test]
    fn doubling_exceeds_plain_scaling_below_threshold() {
        for i in 1..=1000 {
            let t = DOUBLING_THRESHOLD_HOURS * i as f64 / 1001.0;
            assert!(scale_with_doubling(t) > t / 10.0, "t = {t}");
        }
    }

    #[test]
    fn field_names_parse() {
        for f in Field::ALL {
            assert_eq!(f.name().parse::<Field>().unwrap(), f);
        }
        assert!("T6_1".parse::<Field>().is_err());
    }

    proptest! {
        #[test]
        fn branch_is_decided_by_strict_comparison(t in 1e-6f64..100.0) {
            let s = scale_with_doubling(t);
            if t < DOUBLING_THRESHOLD_HOURS {
                prop_assert_eq!(s, 2.0 * t / 10.0);
            } else {
                prop_assert_eq!(s, t / 10.0);
            }
        }

        #[test]
        fn scaled_times_are_positive(
            a in 1e-3f64..48.0, b in 1e-3f64..48.0, c in 1e-3f64..48.0, d in 1e-3f64..48.0,
        ) {
            let p = validate([a, b, c, d, 1.0, 1.0, 0.0].into()).unwrap();
            let s = scale_times(&p);
            prop_assert!(s.t6_1_s > 0.0 && s.t6_2_s > 0.0 && s.t16_s > 0.0 && s.t24_s > 0.0);
            prop_assert_eq!(s.t6_2_s, b / 10.0);
            prop_assert_eq!(s.t24_s, d / 10.0);
        }
    }
}
