//! Watch error probabilities and the end-to-end day-ahead pipeline.
//!
//! [`run_watch`] evaluates every quantity in dependency order. A domain error
//! leaves its quantity undefined and is recorded once; quantities that depend
//! on it are left undefined without further errors, and everything else is
//! still computed.

use crate::analysis::{
    classify_grid, classify_market, critical_distance, elliptic_distance, energy_u_s,
    frequency_u_p, hyperbolic_distance_from_radicand, hyperbolic_radicand, impulse_v1, log_term_w1,
    momentum_p_x, quenched_probability, star_reliability, threat_level, trade_volume,
    triangle_reliability, Distances, Potentials, ReliabilityProbabilities, SystemState,
    ThreatAssessment, ThreatLevel,
};
use crate::config::RunConfig;
use crate::error::{finite, ErrorKind, StageError};
use crate::grid_model::{energy_e1, omega1, omega2, second_pair, separability, time_t1, GridModel};
use crate::inputs::{scale_times, InputParameters, ScaledTimes};
use crate::lyapunov::{
    build_matrix, exponent_lp1, exponent_lp2, exponent_ly1, exponent_ly2, permanent,
    EvolutionMatrix, LyapunovExponents,
};
use crate::quantity::Quantity;

/// Droop at which the fourth chain probability equals the third.
pub const REFERENCE_DROOP: f64 = 3.5;

/// The three distances sorted descending: `r_small <= r_mid <= r_big`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistanceChain {
    pub r_big: f64,
    pub r_mid: f64,
    pub r_small: f64,
}

impl DistanceChain {
    /// Ties keep the order `(r_e, r_h, r_c)`.
    pub fn from_distances(d: &Distances) -> Self {
        let [r_small, r_mid, r_big] = sorted([d.r_e, d.r_h, d.r_c]);
        Self {
            r_big,
            r_mid,
            r_small,
        }
    }
}

/// Derived from the sorted reliabilities `p3* <= p2* <= p1*`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbabilityChain {
    pub p1: f64,
    pub p2: f64,
    pub p3: f64,
    pub p4: f64,
}

impl ProbabilityChain {
    /// `p1 = p1*`, `p2 = 1 − p2*/2`, `p3 = p3*/2`, `p4 = (k_c/3.5)⁴·p3`.
    pub fn new(p: &ReliabilityProbabilities, k_c: f64) -> Self {
        let [low, mid, high] = sorted([p.p_s, p.p_t, p.p_g]);
        let p3 = low / 2.0;
        Self {
            p1: high,
            p2: 1.0 - mid / 2.0,
            p3,
            p4: (k_c / REFERENCE_DROOP).powi(4) * p3,
        }
    }
}

/// Stable ascending sort.
fn sorted(mut v: [f64; 3]) -> [f64; 3] {
    v.sort_by(f64::total_cmp);
    v
}

/// A probability as computed, and clamped into `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClampedProbability {
    pub raw: f64,
    pub clamped: f64,
    pub out_of_range: bool,
}

impl ClampedProbability {
    pub fn new(raw: f64) -> Self {
        let clamped = raw.clamp(0.0, 1.0);
        Self {
            raw,
            clamped,
            out_of_range: !(0.0..=1.0).contains(&raw),
        }
    }
}

/// `p_f = (2/3)·(R2/(R2 − R1))·((r − R1)/r)²` on the sorted chain.
///
/// With `R2 <= r <= R1` the factor `R2/(R2 − R1)` is never positive, so any
/// chain of distinct positive distances gives `p_f <= 0`. The value is
/// returned as written; [`ClampedProbability`] carries the clamped reading.
pub fn false_alarm_from_chain(c: &DistanceChain) -> Result<f64, StageError> {
    if c.r_small == c.r_big {
        return Err(StageError::new(
            Quantity::FalseAlarmRaw,
            ErrorKind::DegenerateChain,
        ));
    }
    if c.r_mid == 0.0 {
        return Err(StageError::new(
            Quantity::FalseAlarmRaw,
            ErrorKind::ZeroMiddle,
        ));
    }
    let ratio = (c.r_mid - c.r_big) / c.r_mid;
    finite(
        Quantity::FalseAlarmRaw,
        (2.0 / 3.0) * (c.r_small / (c.r_small - c.r_big)) * ratio * ratio,
    )
}

pub fn false_alarm(d: &Distances) -> Result<ClampedProbability, StageError> {
    false_alarm_from_chain(&DistanceChain::from_distances(d)).map(ClampedProbability::new)
}

/// `p_m = 1 − 2√(p4/p3)·(√((v/100)²(1 − v/100)²(p1 − p2)² + p1·p2) + √(p3·p4))`.
pub fn miss_from_chain(c: &ProbabilityChain, v_m: f64) -> Result<f64, StageError> {
    if c.p3.is_nan() || c.p3 <= 0.0 {
        return Err(StageError::new(
            Quantity::MissRaw,
            ErrorKind::ZeroP3 { p3: c.p3 },
        ));
    }
    let v = v_m / 100.0;
    let spread = c.p1 - c.p2;
    let radicand = v * v * (1.0 - v) * (1.0 - v) * spread * spread + c.p1 * c.p2;
    if radicand < 0.0 {
        return Err(StageError::new(
            Quantity::MissRaw,
            ErrorKind::NegativeRadicand { radicand },
        ));
    }
    let raw = 1.0 - 2.0 * (c.p4 / c.p3).sqrt() * (radicand.sqrt() + (c.p3 * c.p4).sqrt());
    finite(Quantity::MissRaw, raw)
}

pub fn miss_probability(
    p: &ReliabilityProbabilities,
    k_c: f64,
    v_m: f64,
) -> Result<ClampedProbability, StageError> {
    miss_from_chain(&ProbabilityChain::new(p, k_c), v_m).map(ClampedProbability::new)
}

/// Every intermediate of a run, each quantity stored once.
#[derive(Debug, Clone, PartialEq)]
pub struct Trace {
    values: [Option<f64>; Quantity::COUNT],
    pub matrix: EvolutionMatrix,
}

impl Trace {
    pub fn get(&self, q: Quantity) -> Option<f64> {
        self.values[q.index()]
    }

    pub fn iter(&self) -> impl Iterator<Item = (Quantity, Option<f64>)> + '_ {
        Quantity::ALL.into_iter().map(|q| (q, self.get(q)))
    }

    fn all<const N: usize>(&self, qs: [Quantity; N]) -> Option<[f64; N]> {
        let mut out = [0.0; N];
        for (slot, q) in out.iter_mut().zip(qs) {
            *slot = self.get(q)?;
        }
        Some(out)
    }

    pub fn scaled_times(&self) -> Option<ScaledTimes> {
        use Quantity::*;
        let [t6_1_s, t6_2_s, t16_s, t24_s] =
            self.all([T61Scaled, T62Scaled, T16Scaled, T24Scaled])?;
        Some(ScaledTimes {
            t6_1_s,
            t6_2_s,
            t16_s,
            t24_s,
        })
    }

    pub fn exponents(&self) -> Option<LyapunovExponents> {
        use Quantity::*;
        let [l_p1, l_p2, l_y1, l_y2, perm_a] = self.all([Lp1, Lp2, Ly1, Ly2, PermA])?;
        Some(LyapunovExponents {
            l_p1,
            l_p2,
            l_y1,
            l_y2,
            perm_a,
        })
    }

    pub fn grid_model(&self) -> Option<GridModel> {
        use Quantity::*;
        let [e1, e2, w1, w2, t1, t2] = self.all([E1, E2, Omega1, Omega2, T1, T2])?;
        Some(GridModel::assemble(e1, e2, w1, w2, t1, t2))
    }

    pub fn potentials(&self) -> Option<Potentials> {
        use Quantity::*;
        let [v1, w1, u_s, u_p, p_x] = self.all([V1, W1, Us, Up, Px])?;
        Some(Potentials {
            v1,
            w1,
            u_s,
            u_p,
            p_x,
        })
    }

    pub fn distances(&self) -> Option<Distances> {
        let [r_e, r_h, r_c] = self.all([Quantity::Re, Quantity::Rh, Quantity::Rc])?;
        Some(Distances { r_e, r_h, r_c })
    }

    pub fn probabilities(&self) -> Option<ReliabilityProbabilities> {
        let [p_s, p_t, p_g] = self.all([Quantity::Ps, Quantity::Pt, Quantity::Pg])?;
        Some(ReliabilityProbabilities { p_s, p_t, p_g })
    }

    pub fn distance_chain(&self) -> Option<DistanceChain> {
        use Quantity::*;
        let [r_big, r_mid, r_small] = self.all([RBig, RMid, RSmall])?;
        Some(DistanceChain {
            r_big,
            r_mid,
            r_small,
        })
    }

    pub fn probability_chain(&self) -> Option<ProbabilityChain> {
        use Quantity::*;
        let [p1, p2, p3, p4] = self.all([P1, P2, P3, P4])?;
        Some(ProbabilityChain { p1, p2, p3, p4 })
    }
}

/// Named validity markers. `None` means the underlying quantity is undefined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Flags {
    pub paper_gap_flag: bool,
    pub valid_percentage: Option<bool>,
    pub v1_in_unit_interval: Option<bool>,
    pub ps_out_of_range: Option<bool>,
    pub pt_out_of_range: Option<bool>,
    pub pg_out_of_range: Option<bool>,
    pub pf_out_of_range: Option<bool>,
    pub pm_out_of_range: Option<bool>,
    pub pg_undefined: bool,
}

impl Flags {
    /// Whether any flag marks an anomaly.
    pub fn any_raised(&self) -> bool {
        let raised = |f: Option<bool>| f == Some(true);
        let failed = |f: Option<bool>| f == Some(false);
        self.paper_gap_flag
            || self.pg_undefined
            || failed(self.valid_percentage)
            || failed(self.v1_in_unit_interval)
            || raised(self.ps_out_of_range)
            || raised(self.pt_out_of_range)
            || raised(self.pg_out_of_range)
            || raised(self.pf_out_of_range)
            || raised(self.pm_out_of_range)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WatchReport {
    pub input: InputParameters,
    pub config: RunConfig,
    pub trace: Trace,
    pub market_state: Option<SystemState>,
    pub grid_state: Option<SystemState>,
    pub threat: Option<ThreatAssessment>,
    pub false_alarm: Option<ClampedProbability>,
    pub miss: Option<ClampedProbability>,
    pub flags: Flags,
    /// Domain errors in the order they were raised.
    pub errors: Vec<StageError>,
}

impl WatchReport {
    pub fn trade_volume_pct(&self) -> Option<f64> {
        self.trace.get(Quantity::TradeVolume)
    }

    pub fn threat_level(&self) -> Option<ThreatLevel> {
        self.threat.map(|t| t.level)
    }

    pub fn is_degraded(&self) -> bool {
        !self.errors.is_empty() || self.flags.any_raised()
    }
}

/// Pinned replacement values for intermediate quantities.
///
/// A pinned quantity is still computed normally, then its value is replaced
/// before anything downstream reads it. Used for what-if runs and for fault
/// injection on error paths that valid inputs cannot reach.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides(Vec<(Quantity, f64)>);

impl Overrides {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn pin(mut self, q: Quantity, value: f64) -> Self {
        self.0.retain(|(k, _)| *k != q);
        self.0.push((q, value));
        self
    }

    fn get(&self, q: Quantity) -> Option<f64> {
        self.0.iter().find(|(k, _)| *k == q).map(|(_, v)| *v)
    }
}

struct Evaluation<'a> {
    values: [Option<f64>; Quantity::COUNT],
    errors: Vec<StageError>,
    overrides: &'a Overrides,
}

impl Evaluation<'_> {
    fn get(&self, q: Quantity) -> Option<f64> {
        self.values[q.index()]
    }

    fn step_many<const I: usize, const O: usize>(
        &mut self,
        outputs: [Quantity; O],
        deps: [Quantity; I],
        f: impl FnOnce([f64; I]) -> Result<[f64; O], StageError>,
    ) {
        let mut args = [0.0; I];
        for (slot, d) in args.iter_mut().zip(deps) {
            match self.get(d) {
                Some(v) => *slot = v,
                None => return,
            }
        }
        let result = f(args).and_then(|vals| {
            for (q, v) in outputs.iter().zip(vals) {
                finite(*q, v)?;
            }
            Ok(vals)
        });
        match result {
            Ok(vals) => {
                for (q, v) in outputs.into_iter().zip(vals) {
                    self.values[q.index()] = Some(self.overrides.get(q).unwrap_or(v));
                }
            }
            Err(e) => self.errors.push(e),
        }
    }

    fn step<const I: usize>(
        &mut self,
        output: Quantity,
        deps: [Quantity; I],
        f: impl FnOnce([f64; I]) -> Result<f64, StageError>,
    ) {
        self.step_many([output], deps, |a| f(a).map(|v| [v]));
    }
}

pub fn run_watch(params: &InputParameters, config: &RunConfig) -> WatchReport {
    run_watch_with(params, config, &Overrides::default())
}

pub fn run_watch_with(
    params: &InputParameters,
    config: &RunConfig,
    overrides: &Overrides,
) -> WatchReport {
    use Quantity::*;

    let mut ev = Evaluation {
        values: [None; Quantity::COUNT],
        errors: Vec::new(),
        overrides,
    };

    let scaled = scale_times(params);
    ev.step_many([T61Scaled, T62Scaled, T16Scaled, T24Scaled], [], |[]| {
        Ok([scaled.t6_1_s, scaled.t6_2_s, scaled.t16_s, scaled.t24_s])
    });
    let matrix = match ev.values[T61Scaled.index()..=T24Scaled.index()] {
        [Some(t6_1_s), Some(t6_2_s), Some(t16_s), Some(t24_s)] => build_matrix(&ScaledTimes {
            t6_1_s,
            t6_2_s,
            t16_s,
            t24_s,
        }),
        _ => build_matrix(&scaled),
    };

    // exponents
    ev.step(PermA, [], |[]| Ok(permanent(&matrix)));
    ev.step(Lp1, [], |[]| Ok(exponent_lp1(params.delta())));
    ev.step(Lp2, [PermA], |[p]| exponent_lp2(p));
    ev.step(Ly1, [], |[]| exponent_ly1(params.c_0()));
    ev.step(Ly2, [], |[]| exponent_ly2(params.k_c()));

    // grid model
    ev.step(E1, [Lp1, Lp2], |[a, b]| Ok(energy_e1(a, b)));
    ev.step(T1, [Lp1, Lp2, Ly1, Ly2], |[l_p1, l_p2, l_y1, l_y2]| {
        Ok(time_t1(&LyapunovExponents {
            l_p1,
            l_p2,
            l_y1,
            l_y2,
            perm_a: f64::NAN,
        }))
    });
    ev.step_many([Discriminant, Rho], [Lp1], |[l]| {
        separability(l).map(|r| [r.discriminant, r.rho])
    });
    ev.step_many([E2, T2], [Rho], |[rho]| {
        second_pair(rho).map(|(e, t)| [e, t])
    });
    ev.step(Omega1, [Lp1, T1], |[l, t]| omega1(l, t));
    ev.step(Omega2, [Ly1, T2], |[l, t]| omega2(l, t));

    // potentials and trade volume
    ev.step(V1, [Lp1, T1], |[l, t]| impulse_v1(l, t));
    ev.step(W1, [Lp1, T1], |[l, t]| log_term_w1(l, t));
    ev.step(Us, [Ly1, V1, W1], |[l, v, w]| energy_u_s(l, v, w));
    ev.step(Px, [E1, Omega1, Omega2], |[e, a, b]| momentum_p_x(e, a, b));
    ev.step(Up, [Px, V1, T1], |[p, v, t]| frequency_u_p(p, v, t));
    ev.step(TradeVolume, [Us], |[u]| trade_volume(u).map(|v| v.pct));

    // distances and reliabilities
    ev.step(Re, [Us, Up], |[s, p]| elliptic_distance(s, p));
    ev.step(Rh, [Omega1, Omega2, E1, E2, T1], |[a, b, e1, e2, t]| {
        hyperbolic_distance_from_radicand(hyperbolic_radicand(a, b, e1, e2, t))
    });
    ev.step(Rc, [V1, Lp1], |[v, l]| critical_distance(v, l));
    ev.step(Ps, [V1], |[v]| Ok(star_reliability(v)));
    ev.step(Pt, [V1], |[v]| Ok(triangle_reliability(v)));
    let mode = config.up_log_mode();
    ev.step(Pg, [Us, Up, E1], |[s, p, e]| {
        quenched_probability(s, p, e, mode)
    });

    // watch
    ev.step_many([RBig, RMid, RSmall], [Re, Rh, Rc], |[r_e, r_h, r_c]| {
        let c = DistanceChain::from_distances(&Distances { r_e, r_h, r_c });
        Ok([c.r_big, c.r_mid, c.r_small])
    });
    let k_c = params.k_c();
    ev.step_many([P1, P2, P3, P4], [Ps, Pt, Pg], |[p_s, p_t, p_g]| {
        let c = ProbabilityChain::new(&ReliabilityProbabilities { p_s, p_t, p_g }, k_c);
        Ok([c.p1, c.p2, c.p3, c.p4])
    });
    ev.step(
        FalseAlarmRaw,
        [RBig, RMid, RSmall],
        |[r_big, r_mid, r_small]| {
            false_alarm_from_chain(&DistanceChain {
                r_big,
                r_mid,
                r_small,
            })
        },
    );
    ev.step(
        MissRaw,
        [P1, P2, P3, P4, TradeVolume],
        |[p1, p2, p3, p4, v]| miss_from_chain(&ProbabilityChain { p1, p2, p3, p4 }, v),
    );

    let trace = Trace {
        values: ev.values,
        matrix,
    };
    let market_state = trace.distances().map(|d| classify_market(&d));
    let grid_state = trace
        .probabilities()
        .map(|p| classify_grid(&p, config.equality_tolerance()));
    let threat = market_state
        .zip(grid_state)
        .map(|(m, g)| threat_level(m, g));
    let false_alarm = trace.get(FalseAlarmRaw).map(ClampedProbability::new);
    let miss = trace.get(MissRaw).map(ClampedProbability::new);

    let outside = |q: Quantity| trace.get(q).map(|p| !(0.0..=1.0).contains(&p));
    let flags = Flags {
        paper_gap_flag: threat.is_some_and(|t| t.paper_gap_flag),
        valid_percentage: trace.get(TradeVolume).map(|v| (0.0..=100.0).contains(&v)),
        v1_in_unit_interval: trace.get(V1).map(|v| (0.0..=1.0).contains(&v)),
        ps_out_of_range: outside(Ps),
        pt_out_of_range: outside(Pt),
        pg_out_of_range: outside(Pg),
        pf_out_of_range: false_alarm.map(|p| p.out_of_range),
        pm_out_of_range: miss.map(|p| p.out_of_range),
        pg_undefined: trace.get(Pg).is_none(),
    };

    WatchReport {
        input: *params,
        config: *config,
        trace,
        market_state,
        grid_state,
        threat,
        false_alarm,
        miss,
        flags,
        errors: ev.errors,
    }
}
