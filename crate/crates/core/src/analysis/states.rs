//! Rule-based market, grid and threat-level classification.
//!
//! The published market and grid rules overlap: the emergency condition implies
//! the restorative one. Rules are therefore checked from most to least severe.

use std::fmt;

use super::distances::Distances;
use super::reliability::ReliabilityProbabilities;

/// State of the market or of the grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SystemState {
    Normal,
    Restorative,
    Emergency,
}

impl SystemState {
    pub const ALL: [SystemState; 3] = [
        SystemState::Normal,
        SystemState::Restorative,
        SystemState::Emergency,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SystemState::Normal => "normal",
            SystemState::Restorative => "restorative",
            SystemState::Emergency => "emergency",
        }
    }

    fn from_conditions(both: bool, either: bool) -> Self {
        if both {
            SystemState::Emergency
        } else if either {
            SystemState::Restorative
        } else {
            SystemState::Normal
        }
    }
}

impl fmt::Display for SystemState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ThreatLevel {
    Low,
    Guarded,
    Elevated,
    High,
    Severe,
}

impl ThreatLevel {
    pub fn as_str(self) -> &'static str {
        match self {
            ThreatLevel::Low => "low",
            ThreatLevel::Guarded => "guarded",
            ThreatLevel::Elevated => "elevated",
            ThreatLevel::High => "high",
            ThreatLevel::Severe => "severe",
        }
    }
}

impl fmt::Display for ThreatLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ThreatAssessment {
    pub level: ThreatLevel,
    /// Set when the pair is not covered by the published table and was
    /// resolved to `Guarded`.
    pub paper_gap_flag: bool,
}

/// A distance "exceeds" the critical one only strictly; ties count as normal.
pub fn classify_market(d: &Distances) -> SystemState {
    let e = d.r_e > d.r_c;
    let h = d.r_h > d.r_c;
    SystemState::from_conditions(e && h, e || h)
}

/// `|x − p_g| <= eps·max(1, |p_g|)`.
pub fn approx_equal(x: f64, p_g: f64, eps: f64) -> bool {
    (x - p_g).abs() <= eps * p_g.abs().max(1.0)
}

pub fn classify_grid(p: &ReliabilityProbabilities, eps: f64) -> SystemState {
    let s = approx_equal(p.p_s, p.p_g, eps);
    let t = approx_equal(p.p_t, p.p_g, eps);
    SystemState::from_conditions(s && t, s || t)
}

pub fn threat_level(market: SystemState, grid: SystemState) -> ThreatAssessment {
    use SystemState::*;
    let (level, paper_gap_flag) = match (market, grid) {
        (Normal, Normal) => (ThreatLevel::Low, false),
        (Restorative, Normal) => (ThreatLevel::Guarded, false),
        (Restorative, Restorative | Emergency) => (ThreatLevel::Elevated, false),
        (Emergency, Normal) => (ThreatLevel::High, false),
        (Emergency, Restorative | Emergency) => (ThreatLevel::Severe, false),
        (Normal, Restorative | Emergency) => (ThreatLevel::Guarded, true),
    };
    ThreatAssessment {
        level,
        paper_gap_flag,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use SystemState::*;

    fn d(r_e: f64, r_h: f64, r_c: f64) -> Distances {
        Distances { r_e, r_h, r_c }
    }

    fn p(p_s: f64, p_t: f64, p_g: f64) -> ReliabilityProbabilities {
        ReliabilityProbabilities { p_s, p_t, p_g }
    }

    #[test]
    fn market_examples() {
        assert_eq!(classify_market(&d(1.0, 1.0, 2.0)), Normal);
        assert_eq!(classify_market(&d(3.0, 1.0, 2.0)), Restorative);
        assert_eq!(classify_market(&d(1.0, 3.0, 2.0)), Restorative);
        assert_eq!(classify_market(&d(3.0, 3.0, 2.0)), Emergency);
    }

    #[test]
    fn market_ties_do_not_exceed() {
        assert_eq!(classify_market(&d(2.0, 2.0, 2.0)), Normal);
        assert_eq!(classify_market(&d(2.0, 3.0, 2.0)), Restorative);
    }

    #[test]
    fn grid_examples() {
        assert_eq!(classify_grid(&p(0.9, 0.8, 0.5), 1e-6), Normal);
        assert_eq!(classify_grid(&p(0.5, 0.8, 0.5), 1e-6), Restorative);
        assert_eq!(classify_grid(&p(0.8, 0.5, 0.5), 1e-6), Restorative);
        assert_eq!(classify_grid(&p(0.5, 0.5, 0.5), 1e-6), Emergency);
    }

    #[test]
    fn grid_tolerance_is_relative_above_one() {
        assert!(approx_equal(0.5 + 9e-7, 0.5, 1e-6));
        assert!(!approx_equal(0.5 + 2e-6, 0.5, 1e-6));
        assert!(approx_equal(1000.0 + 9e-4, 1000.0, 1e-6));
        assert!(!approx_equal(1000.0 + 2e-3, 1000.0, 1e-6));
    }

    #[test]
    fn threat_table_is_total() {
        let expected = [
            ((Normal, Normal), ThreatLevel::Low, false),
            ((Normal, Restorative), ThreatLevel::Guarded, true),
            ((Normal, Emergency), ThreatLevel::Guarded, true),
            ((Restorative, Normal), ThreatLevel::Guarded, false),
            ((Restorative, Restorative), ThreatLevel::Elevated, false),
            ((Restorative, Emergency), ThreatLevel::Elevated, false),
            ((Emergency, Normal), ThreatLevel::High, false),
            ((Emergency, Restorative), ThreatLevel::Severe, false),
            ((Emergency, Emergency), ThreatLevel::Severe, false),
        ];
        for ((m, g), level, gap) in expected {
            let t = threat_level(m, g);
            assert_eq!((t.level, t.paper_gap_flag), (level, gap), "({m}, {g})");
        }
    }

    proptest! {
        #[test]
        fn market_is_scale_invariant(
            re in 1e-6f64..10.0, rh in 1e-6f64..10.0, rc in 1e-6f64..10.0, a in 1e-3f64..1e3,
        ) {
            prop_assume!(re != rc && rh != rc);
            prop_assert_eq!(classify_market(&d(re, rh, rc)), classify_market(&d(a * re, a * rh, a * rc)));
        }
    }
}
