//! Day-ahead grid watch built on Lyapunov exponents of the daily load curve.
//!
//! Seven daily parameters flow through five stages: input validation and time
//! scaling, the Lyapunov exponents, the grid model, the grid analysis
//! (potentials, distances, reliabilities and states) and the watch error
//! probabilities. [`run_watch`] runs all of them and returns a [`WatchReport`].

pub mod analysis;
pub mod config;
pub mod error;
mod exact;
pub mod grid_model;
pub mod inputs;
pub mod lyapunov;
pub mod quantity;
pub mod watch;

pub use analysis::{
    Distances, Potentials, ReliabilityProbabilities, SystemState, ThreatAssessment, ThreatLevel,
    TradeVolume,
};
pub use config::{ConfigError, RunConfig, UpLogMode, DEFAULT_EQUALITY_TOLERANCE};
pub use error::{ErrorKind, Potential, Stage, StageError};
pub use grid_model::{GridModel, SeparabilityRoot};
pub use inputs::{
    scale_times, validate, Field, FieldError, InputParameters, RangeWarning, RawParameters,
    ScaledTimes, ValidationError,
};
pub use lyapunov::{EvolutionMatrix, LyapunovExponents};
pub use quantity::{Quantity, Section};
pub use watch::{
    run_watch, run_watch_with, ClampedProbability, DistanceChain, Flags, Overrides,
    ProbabilityChain, Trace, WatchReport,
};
