//! Names for every scalar the pipeline produces.
//!
//! A [`Quantity`] identifies one entry of the run trace. The order of
//! [`Quantity::ALL`] is the order in which the pipeline computes them and the
//! order in which serialized reports list them.

use std::fmt;

use crate::error::Stage;

/// Report section a quantity is serialized under.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Section {
    ScaledTimes,
    Exponents,
    GridModel,
    Potentials,
    Distances,
    Probabilities,
    Watch,
    DistanceChain,
    ProbabilityChain,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Quantity {
    T61Scaled,
    T62Scaled,
    T16Scaled,
    T24Scaled,
    PermA,
    Lp1,
    Lp2,
    Ly1,
    Ly2,
    Discriminant,
    Rho,
    E1,
    E2,
    Omega1,
    Omega2,
    T1,
    T2,
    V1,
    W1,
    Us,
    Px,
    Up,
    TradeVolume,
    Re,
    Rh,
    Rc,
    Ps,
    Pt,
    Pg,
    RBig,
    RMid,
    RSmall,
    P1,
    P2,
    P3,
    P4,
    FalseAlarmRaw,
    MissRaw,
}

impl Quantity {
    pub const COUNT: usize = 38;

    pub const ALL: [Quantity; Self::COUNT] = [
        Quantity::T61Scaled,
        Quantity::T62Scaled,
        Quantity::T16Scaled,
        Quantity::T24Scaled,
        Quantity::PermA,
        Quantity::Lp1,
        Quantity::Lp2,
        Quantity::Ly1,
        Quantity::Ly2,
        Quantity::Discriminant,
        Quantity::Rho,
        Quantity::E1,
        Quantity::E2,
        Quantity::Omega1,
        Quantity::Omega2,
        Quantity::T1,
        Quantity::T2,
        Quantity::V1,
        Quantity::W1,
        Quantity::Us,
        Quantity::Px,
        Quantity::Up,
        Quantity::TradeVolume,
        Quantity::Re,
        Quantity::Rh,
        Quantity::Rc,
        Quantity::Ps,
        Quantity::Pt,
        Quantity::Pg,
        Quantity::RBig,
        Quantity::RMid,
        Quantity::RSmall,
        Quantity::P1,
        Quantity::P2,
        Quantity::P3,
        Quantity::P4,
        Quantity::FalseAlarmRaw,
        Quantity::MissRaw,
    ];

    pub(crate) fn index(self) -> usize {
        self as usize
    }

    /// Serialized key.
    pub fn name(self) -> &'static str {
        use Quantity::*;
        match self {
            T61Scaled => "t6_1_s",
            T62Scaled => "t6_2_s",
            T16Scaled => "t16_s",
            T24Scaled => "t24_s",
            PermA => "perm_a",
            Lp1 => "l_p1",
            Lp2 => "l_p2",
            Ly1 => "l_y1",
            Ly2 => "l_y2",
            Discriminant => "discriminant",
            Rho => "rho",
            E1 => "e1",
            E2 => "e2",
            Omega1 => "omega1",
            Omega2 => "omega2",
            T1 => "t1",
            T2 => "t2",
            V1 => "v1",
            W1 => "w1",
            Us => "u_s",
            Px => "p_x",
            Up => "u_p",
            TradeVolume => "trade_volume_pct",
            Re => "r_e",
            Rh => "r_h",
            Rc => "r_c",
            Ps => "p_s",
            Pt => "p_t",
            Pg => "p_g",
            RBig => "r_big",
            RMid => "r_mid",
            RSmall => "r_small",
            P1 => "p1",
            P2 => "p2",
            P3 => "p3",
            P4 => "p4",
            FalseAlarmRaw => "p_false_alarm_raw",
            MissRaw => "p_miss_raw",
        }
    }

    pub fn from_name(name: &str) -> Option<Quantity> {
        Self::ALL.into_iter().find(|q| q.name() == name)
    }

    pub fn section(self) -> Section {
        use Quantity::*;
        match self {
            T61Scaled | T62Scaled | T16Scaled | T24Scaled => Section::ScaledTimes,
            PermA | Lp1 | Lp2 | Ly1 | Ly2 => Section::Exponents,
            Discriminant | Rho | E1 | E2 | Omega1 | Omega2 | T1 | T2 => Section::GridModel,
            V1 | W1 | Us | Px | Up => Section::Potentials,
            Re | Rh | Rc => Section::Distances,
            Ps | Pt | Pg => Section::Probabilities,
            TradeVolume | FalseAlarmRaw | MissRaw => Section::Watch,
            RBig | RMid | RSmall => Section::DistanceChain,
            P1 | P2 | P3 | P4 => Section::ProbabilityChain,
        }
    }

    pub fn stage(self) -> Stage {
        use Quantity::*;
        match self {
            T61Scaled | T62Scaled | T16Scaled | T24Scaled => Stage::Inputs,
            PermA | Lp1 | Lp2 | Ly1 | Ly2 => Stage::Lyapunov,
            Discriminant | Rho | E1 | E2 | Omega1 | Omega2 | T1 | T2 => Stage::GridModel,
            V1 | W1 | Us | Px | Up | TradeVolume | Re | Rh | Rc | Ps | Pt | Pg => {
                Stage::GridAnalysis
            }
            RBig | RMid | RSmall | P1 | P2 | P3 | P4 | FalseAlarmRaw | MissRaw => Stage::Watch,
        }
    }

    /// Number of the defining equation in the published model.
    pub fn equation(self) -> u8 {
        use Quantity::*;
        match self {
            T61Scaled | T62Scaled | T16Scaled | T24Scaled | PermA => 2,
            Lp1 => 1,
            Lp2 => 3,
            Ly1 => 4,
            Ly2 => 5,
            E1 | T1 => 6,
            Discriminant | Rho | E2 | T2 => 8,
            Omega1 | Omega2 => 9,
            V1 | W1 | Us => 11,
            Px | Up => 12,
            TradeVolume => 13,
            Re => 14,
            Rh => 15,
            Rc => 16,
            Ps => 18,
            Pt => 19,
            Pg => 20,
            RBig | RMid | RSmall | FalseAlarmRaw => 23,
            P1 | P2 | P3 | P4 | MissRaw => 24,
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn all_is_in_declaration_order() {
        for (i, q) in Quantity::ALL.iter().enumerate() {
            assert_eq!(q.index(), i);
        }
    }

    #[test]
    fn names_are_unique_and_round_trip() {
        let names: HashSet<_> = Quantity::ALL.iter().map(|q| q.name()).collect();
        assert_eq!(names.len(), Quantity::COUNT);
        for q in Quantity::ALL {
            assert_eq!(Quantity::from_name(q.name()), Some(q));
        }
        assert_eq!(Quantity::from_name("lambda"), None);
    }
}
