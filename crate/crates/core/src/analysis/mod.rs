//! Grid analysis: potentials, trade volume, distances, reliabilities and states.

pub mod distances;
pub mod potentials;
pub mod reliability;
pub mod states;

pub use distances::{
    critical_distance, elliptic_distance, hyperbolic_distance, hyperbolic_distance_from_radicand,
    hyperbolic_radicand, Distances,
};
pub use potentials::{
    energy_potential, energy_u_s, frequency_potential, frequency_u_p, impulse_v1, log_term_w1,
    momentum_p_x, trade_volume, Potentials, TradeVolume,
};
pub use reliability::{
    quenched_probability, star_reliability, triangle_reliability, ReliabilityProbabilities,
    QUENCH_CONSTANT, STAR_COEFFS, TRIANGLE_COEFFS,
};
pub use states::{
    classify_grid, classify_market, threat_level, SystemState, ThreatAssessment, ThreatLevel,
};
