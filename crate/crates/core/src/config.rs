//! Run-time options that change how the pipeline reads ambiguous formulas.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// How the quenched-disorder probability treats the logarithms of the potentials.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum UpLogMode {
    /// `ln U_s` and `ln U_p` exist only for positive potentials; otherwise `p_g` is undefined.
    #[default]
    Strict,
    /// Take `ln |U_s|` and `ln |U_p|`; only exact zeros are rejected.
    Absolute,
}

impl UpLogMode {
    pub fn as_str(self) -> &'static str {
        match self {
            UpLogMode::Strict => "strict",
            UpLogMode::Absolute => "absolute",
        }
    }
}

impl fmt::Display for UpLogMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for UpLogMode {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "strict" => Ok(UpLogMode::Strict),
            "absolute" => Ok(UpLogMode::Absolute),
            other => Err(ConfigError::UnknownLogMode(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("equality tolerance must be a positive finite number, got {0}")]
    Tolerance(f64),
    #[error("unknown up-log-mode `{0}` (expected strict or absolute)")]
    UnknownLogMode(String),
}

pub const DEFAULT_EQUALITY_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunConfig {
    equality_tolerance: f64,
    up_log_mode: UpLogMode,
}

impl RunConfig {
    pub fn new(equality_tolerance: f64, up_log_mode: UpLogMode) -> Result<Self, ConfigError> {
        if !(equality_tolerance.is_finite() && equality_tolerance > 0.0) {
            return Err(ConfigError::Tolerance(equality_tolerance));
        }
        Ok(Self {
            equality_tolerance,
            up_log_mode,
        })
    }

    /// Relative tolerance for the probability equalities of the grid-state rule.
    pub fn equality_tolerance(&self) -> f64 {
        self.equality_tolerance
    }

    pub fn up_log_mode(&self) -> UpLogMode {
        self.up_log_mode
    }
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            equality_tolerance: DEFAULT_EQUALITY_TOLERANCE,
            up_log_mode: UpLogMode::Strict,
        }
    }
}
