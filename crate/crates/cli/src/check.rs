//! Built-in oracle suite behind `daywatch check`.

use std::fmt;

use daywatch_core::analysis::{star_reliability, triangle_reliability};
use daywatch_core::grid_model::{second_pair, separability};
use daywatch_core::lyapunov::{permanent, permanent_by_expansion};
use daywatch_core::{run_watch, validate, EvolutionMatrix, RawParameters, RunConfig, UpLogMode};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use crate::report::report_json;

/// Reports frozen from the high-precision oracle, with the log mode each was
/// generated in.
pub const GOLDEN: [(&str, UpLogMode, &str); 5] = [
    (
        "baseline",
        UpLogMode::Strict,
        include_str!("../../../golden/baseline.json"),
    ),
    (
        "baseline_absolute",
        UpLogMode::Absolute,
        include_str!("../../../golden/baseline_absolute.json"),
    ),
    (
        "guarded",
        UpLogMode::Strict,
        include_str!("../../../golden/guarded.json"),
    ),
    (
        "high",
        UpLogMode::Strict,
        include_str!("../../../golden/high.json"),
    ),
    (
        "elevated",
        UpLogMode::Strict,
        include_str!("../../../golden/elevated.json"),
    ),
];

pub const GOLDEN_TOLERANCE: f64 = 1e-9;

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    a == b || (a - b).abs() <= tol * a.abs().max(b.abs())
}

/// Structural comparison: identical keys in identical order, identical
/// non-numeric leaves, numbers within relative `tol`. Returns one line per
/// mismatch.
pub fn compare_json(expected: &Value, actual: &Value, tol: f64) -> Vec<String> {
    let mut out = Vec::new();
    walk(expected, actual, tol, "$", &mut out);
    out
}

fn walk(e: &Value, a: &Value, tol: f64, path: &str, out: &mut Vec<String>) {
    match (e, a) {
        (Value::Object(me), Value::Object(ma)) => {
            let ke: Vec<_> = me.keys().collect();
            let ka: Vec<_> = ma.keys().collect();
            if ke != ka {
                out.push(format!("{path}: keys {ke:?} != {ka:?}"));
                return;
            }
            for (k, v) in me {
                walk(v, &ma[k], tol, &format!("{path}.{k}"), out);
            }
        }
        (Value::Array(ve), Value::Array(va)) => {
            if ve.len() != va.len() {
                out.push(format!("{path}: length {} != {}", ve.len(), va.len()));
                return;
            }
            for (i, (x, y)) in ve.iter().zip(va).enumerate() {
                walk(x, y, tol, &format!("{path}[{i}]"), out);
            }
        }
        (Value::Number(x), Value::Number(y)) => {
            let (x, y) = (
                x.as_f64().unwrap_or(f64::NAN),
                y.as_f64().unwrap_or(f64::NAN),
            );
            if !rel_close(x, y, tol) {
                out.push(format!("{path}: {x} != {y}"));
            }
        }
        _ if e == a => {}
        _ => out.push(format!("{path}: {e} != {a}")),
    }
}

/// Runs the input block of a golden report and compares the result.
pub fn golden_mismatches(golden: &str, mode: UpLogMode) -> Result<Vec<String>, String> {
    let expected: Value = serde_json::from_str(golden).map_err(|e| e.to_string())?;
    let input = &expected["input"];
    let mut raw = RawParameters::default();
    for field in daywatch_core::Field::ALL {
        let v = input[field.name()]
            .as_f64()
            .ok_or_else(|| format!("golden input lacks {field}"))?;
        raw.set(field, v);
    }
    let params = validate(raw).map_err(|e| e.to_string())?;
    let config = RunConfig::new(daywatch_core::DEFAULT_EQUALITY_TOLERANCE, mode)
        .map_err(|e| e.to_string())?;
    let actual = report_json(&run_watch(&params, &config), input["date"].as_str());
    Ok(compare_json(&expected, &actual, GOLDEN_TOLERANCE))
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{tag}  {:<28}{}", self.name, self.detail)
    }
}

fn outcome(name: &str, passed: bool, detail: String) -> CheckOutcome {
    CheckOutcome {
        name: name.to_string(),
        passed,
        detail,
    }
}

/// Largest relative disagreement between Ryser and the 24-term expansion on
/// `n` random matrices with entries uniform in `[0, 3]`.
pub fn permanent_oracle(n: usize, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let mut a = [[0.0; 4]; 4];
            for v in a.iter_mut().flatten() {
                *v = rng.random_range(0.0..=3.0);
            }
            let m = EvolutionMatrix::new(a);
            let (r, e) = (permanent(&m), permanent_by_expansion(&m));
            if r == e {
                0.0
            } else {
                (r - e).abs() / r.abs().max(e.abs())
            }
        })
        .fold(0.0, f64::max)
}

fn check_permanent() -> CheckOutcome {
    let worst = permanent_oracle(1000, 0x5eed);
    outcome(
        "permanent oracle",
        worst <= 1e-12,
        format!("1000 matrices, max rel diff {worst:.3e}"),
    )
}

fn check_endpoints() -> CheckOutcome {
    let dev = [
        (star_reliability(0.0) - 1.0).abs(),
        star_reliability(1.0).abs(),
        (triangle_reliability(0.0) - 1.0).abs(),
        triangle_reliability(1.0).abs(),
    ]
    .into_iter()
    .fold(0.0, f64::max);
    outcome(
        "reliability endpoints",
        dev <= 1e-12,
        format!("max deviation {dev:.3e}"),
    )
}

fn check_separability() -> CheckOutcome {
    let mut worst: f64 = 0.0;
    let mut failed = false;
    for i in 0..100 {
        let l = 1.0 + 2.0 * i as f64 / 99.0;
        let s = 2.0 + l;
        match separability(l).and_then(|r| second_pair(r.rho).map(|p| (r, p))) {
            Ok((r, (e2, t2))) => {
                let rho = s * (1.0 + 3f64.sqrt()) / 2.0;
                let d = [
                    (r.discriminant - 3.0 * s * s).abs() / (3.0 * s * s),
                    (r.rho - rho).abs() / rho,
                    (e2 * t2 / 10.0 - 1.0).abs(),
                ];
                worst = d.into_iter().fold(worst, f64::max);
            }
            Err(_) => failed = true,
        }
    }
    outcome(
        "separability identity",
        !failed && worst <= 1e-9,
        format!("100 points, max deviation {worst:.3e}"),
    )
}

fn check_golden(name: &str, mode: UpLogMode, text: &str) -> CheckOutcome {
    let label = format!("golden {name}");
    match golden_mismatches(text, mode) {
        Ok(m) if m.is_empty() => outcome(
            &label,
            true,
            format!("{mode} mode, rel {GOLDEN_TOLERANCE:e}"),
        ),
        Ok(m) => outcome(&label, false, m.join("; ")),
        Err(e) => outcome(&label, false, e),
    }
}

pub fn run_checks() -> Vec<CheckOutcome> {
    let mut out = vec![check_permanent(), check_endpoints(), check_separability()];
    out.extend(GOLDEN.iter().map(|(n, m, t)| check_golden(n, *m, t)));
    out
}
