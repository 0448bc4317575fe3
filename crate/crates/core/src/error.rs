//! Structured errors for every pipeline stage.
//!
//! Each [`StageError`] names the stage that raised it, the equation number of
//! the formula whose domain was violated, and the offending quantity. The
//! pipeline never turns a domain violation into a NaN or an infinity.

use std::fmt;

use thiserror::Error;

use crate::quantity::Quantity;

/// Pipeline stage, in execution order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Stage {
    Inputs,
    Lyapunov,
    GridModel,
    GridAnalysis,
    Watch,
}

impl Stage {
    pub fn as_str(self) -> &'static str {
        match self {
            Stage::Inputs => "inputs",
            Stage::Lyapunov => "lyapunov",
            Stage::GridModel => "grid-model",
            Stage::GridAnalysis => "grid-analysis",
            Stage::Watch => "watch",
        }
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which of the two ultra-hyperbolic potentials violated a log domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Potential {
    Energy,
    Frequency,
}

impl Potential {
    pub fn symbol(self) -> &'static str {
        match self {
            Potential::Energy => "u_s",
            Potential::Frequency => "u_p",
        }
    }
}

/// What went wrong, with the value that triggered it where one exists.
#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum ErrorKind {
    #[error("permanent per(A) = {value} is not positive, its logarithm is undefined")]
    NonPositivePermanent { value: f64 },
    #[error("exponential for {quantity} exceeds the binary64 range")]
    Overflow { quantity: Quantity },
    #[error("separability discriminant {value} is negative")]
    NegativeDiscriminant { value: f64 },
    #[error("stability factor rho = {rho} is below 2")]
    RhoBelowTwo { rho: f64 },
    #[error("time {which} is zero")]
    ZeroTime { which: Quantity },
    #[error("l_p1 is zero")]
    ZeroLp1,
    #[error("impulse v1 is zero")]
    ZeroImpulse,
    #[error("energy potential u_s is zero")]
    ZeroPotential,
    #[error("gap u_s - u_p = {gap} is not positive")]
    NonPositiveGap { gap: f64 },
    #[error("radicand {radicand} is negative")]
    NegativeRadicand { radicand: f64 },
    #[error("potential {} = {value} has no real logarithm", which.symbol())]
    NonPositivePotential { which: Potential, value: f64 },
    #[error("all three distances coincide")]
    DegenerateChain,
    #[error("middle distance is zero")]
    ZeroMiddle,
    #[error("smallest halved probability p3 is not positive")]
    ZeroP3 { p3: f64 },
    #[error("{quantity} evaluated to a non-finite value")]
    NonFinite { quantity: Quantity },
}

impl ErrorKind {
    /// Stable snake-case identifier used in serialized reports.
    pub fn code(&self) -> &'static str {
        match self {
            ErrorKind::NonPositivePermanent { .. } => "non_positive_permanent",
            ErrorKind::Overflow { .. } => "overflow",
            ErrorKind::NegativeDiscriminant { .. } => "negative_discriminant",
            ErrorKind::RhoBelowTwo { .. } => "rho_below_two",
            ErrorKind::ZeroTime { .. } => "zero_time",
            ErrorKind::ZeroLp1 => "zero_lp1",
            ErrorKind::ZeroImpulse => "zero_impulse",
            ErrorKind::ZeroPotential => "zero_potential",
            ErrorKind::NonPositiveGap { .. } => "non_positive_gap",
            ErrorKind::NegativeRadicand { .. } => "negative_radicand",
            ErrorKind::NonPositivePotential { .. } => "non_positive_potential",
            ErrorKind::DegenerateChain => "degenerate_chain",
            ErrorKind::ZeroMiddle => "zero_middle",
            ErrorKind::ZeroP3 { .. } => "zero_p3",
            ErrorKind::NonFinite { .. } => "non_finite",
        }
    }
}

/// A domain error raised while computing `quantity`.
#[derive(Debug, Clone, Copy, PartialEq, Error)]
#[error("{stage} (eq. {equation}) {quantity}: {kind}")]
pub struct StageError {
    pub stage: Stage,
    pub equation: u8,
    /// The quantity left undefined by this error.
    pub quantity: Quantity,
    pub kind: ErrorKind,
}

impl StageError {
    /// Error for `quantity`, tagged with the stage and equation that define it.
    pub fn new(quantity: Quantity, kind: ErrorKind) -> Self {
        Self {
            stage: quantity.stage(),
            equation: quantity.equation(),
            quantity,
            kind,
        }
    }
}

/// Rejects a non-finite result for `quantity` instead of letting it propagate.
pub(crate) fn finite(quantity: Quantity, value: f64) -> Result<f64, StageError> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(StageError::new(quantity, ErrorKind::NonFinite { quantity }))
    }
}
