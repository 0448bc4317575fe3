//! One-parameter sweeps over a base record.

use std::fmt::Write as _;

use daywatch_core::{
    run_watch, Field, FieldError, InputParameters, Quantity, RunConfig, ValidationError,
    WatchReport,
};
use rayon::prelude::*;
use serde_json::{json, Value};
use thiserror::Error;

use crate::report::{fmt_f64, report_json};

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum SweepSpecError {
    #[error("sweep range must satisfy from < to, got from = {from}, to = {to}")]
    EmptyRange { from: f64, to: f64 },
    #[error("sweep needs at least 2 steps, got {0}")]
    TooFewSteps(usize),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    parameter: Field,
    from: f64,
    to: f64,
    steps: usize,
}

impl SweepSpec {
    pub fn new(parameter: Field, from: f64, to: f64, steps: usize) -> Result<Self, SweepSpecError> {
        if from.is_nan() || to.is_nan() || from >= to || !(to - from).is_finite() {
            return Err(SweepSpecError::EmptyRange { from, to });
        }
        if steps < 2 {
            return Err(SweepSpecError::TooFewSteps(steps));
        }
        Ok(Self {
            parameter,
            from,
            to,
            steps,
        })
    }

    pub fn parameter(&self) -> Field {
        self.parameter
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    /// `from + i·(to − from)/(steps − 1)`.
    pub fn value(&self, i: usize) -> f64 {
        self.from + i as f64 * (self.to - self.from) / (self.steps - 1) as f64
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepEntry {
    pub index: usize,
    pub value: f64,
    /// A swept value can take the record outside its valid domain.
    pub outcome: Result<WatchReport, ValidationError>,
}

impl SweepEntry {
    pub fn status(&self) -> &'static str {
        match &self.outcome {
            Ok(r) if r.is_degraded() => "degraded",
            Ok(_) => "ok",
            Err(_) => "invalid",
        }
    }
}

/// Evaluates every point; entries come back in sweep order.
pub fn sweep(base: &InputParameters, spec: &SweepSpec, config: &RunConfig) -> Vec<SweepEntry> {
    (0..spec.steps)
        .into_par_iter()
        .map(|index| {
            let value = spec.value(index);
            let outcome = base
                .with(spec.parameter, value)
                .map(|p| run_watch(&p, config));
            SweepEntry {
                index,
                value,
                outcome,
            }
        })
        .collect()
}

fn field_error_code(e: &FieldError) -> &'static str {
    match e {
        FieldError::NonFinite(_) => "non_finite",
        FieldError::NonPositiveTime(_) => "non_positive_time",
        FieldError::NegativeParameter(_) => "negative_parameter",
    }
}

pub fn validation_error_json(e: &ValidationError) -> Value {
    Value::Array(
        e.violations
            .iter()
            .map(|v| {
                json!({
                    "stage": "inputs",
                    "kind": field_error_code(v),
                    "field": v.field().name(),
                    "detail": v.to_string(),
                })
            })
            .collect(),
    )
}

pub fn sweep_json(spec: &SweepSpec, entries: &[SweepEntry], date: Option<&str>) -> Value {
    let entries: Vec<Value> = entries
        .iter()
        .map(|e| {
            let (report, error) = match &e.outcome {
                Ok(r) => (report_json(r, date), Value::Null),
                Err(v) => (Value::Null, validation_error_json(v)),
            };
            json!({
                "index": e.index,
                "value": e.value,
                "status": e.status(),
                "report": report,
                "error": error,
            })
        })
        .collect();
    json!({
        "parameter": spec.parameter.name(),
        "from": spec.from,
        "to": spec.to,
        "steps": spec.steps,
        "entries": entries,
    })
}

/// Columns of the tab-separated text output after `index`, `value` and `status`.
pub const TEXT_COLUMNS: [Quantity; 17] = [
    Quantity::Lp1,
    Quantity::Lp2,
    Quantity::Ly1,
    Quantity::Ly2,
    Quantity::E1,
    Quantity::T1,
    Quantity::V1,
    Quantity::Us,
    Quantity::Up,
    Quantity::TradeVolume,
    Quantity::Re,
    Quantity::Rh,
    Quantity::Rc,
    Quantity::Ps,
    Quantity::Pt,
    Quantity::Pg,
    Quantity::FalseAlarmRaw,
];

/// Tab-separated, one row per entry; undefined cells are `NA`.
pub fn sweep_text(spec: &SweepSpec, entries: &[SweepEntry]) -> String {
    let mut out = String::new();
    let mut header = vec!["index", spec.parameter.name(), "status"];
    header.extend(TEXT_COLUMNS.iter().map(|q| q.name()));
    header.extend(["p_false_alarm", "p_miss_raw", "p_miss", "threat_level"]);
    let _ = writeln!(out, "{}", header.join("\t"));

    let cell = |v: Option<f64>| v.map_or_else(|| "NA".to_string(), fmt_f64);
    for e in entries {
        let mut row = vec![
            e.index.to_string(),
            fmt_f64(e.value),
            e.status().to_string(),
        ];
        let r = e.outcome.as_ref().ok();
        row.extend(
            TEXT_COLUMNS
                .iter()
                .map(|q| cell(r.and_then(|r| r.trace.get(*q)))),
        );
        row.push(cell(r.and_then(|r| r.false_alarm).map(|p| p.clamped)));
        row.push(cell(r.and_then(|r| r.miss).map(|p| p.raw)));
        row.push(cell(r.and_then(|r| r.miss).map(|p| p.clamped)));
        row.push(
            r.and_then(WatchReport::threat_level)
                .map_or_else(|| "NA".to_string(), |t| t.to_string()),
        );
        let _ = writeln!(out, "{}", row.join("\t"));
    }
    out
}
