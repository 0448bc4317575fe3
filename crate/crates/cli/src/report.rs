//! Report serialization.
//!
//! Undefined quantities are written as `null`; the `flags.errors` list says
//! why. Floats use the shortest decimal that round-trips to the same binary64.

use std::fmt::Write as _;
use std::str::FromStr;

use daywatch_core::{Quantity, Section, StageError, WatchReport};
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Json,
    Text,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "text" => Ok(OutputFormat::Text),
            other => Err(format!(
                "unknown output format `{other}` (expected json or text)"
            )),
        }
    }
}

/// Top-level report keys, in output order.
pub const REPORT_KEYS: [&str; 9] = [
    "input",
    "exponents",
    "grid_model",
    "potentials",
    "distances",
    "probabilities",
    "states",
    "watch",
    "flags",
];

fn num(v: Option<f64>) -> Value {
    v.map_or(Value::Null, Value::from)
}

fn section(report: &WatchReport, s: Section) -> Map<String, Value> {
    report
        .trace
        .iter()
        .filter(|(q, _)| q.section() == s)
        .map(|(q, v)| (q.name().to_string(), num(v)))
        .collect()
}

fn nested(report: &WatchReport, s: Section) -> Value {
    let m = section(report, s);
    if m.values().all(Value::is_null) {
        Value::Null
    } else {
        Value::Object(m)
    }
}

pub fn error_json(e: &StageError) -> Value {
    json!({
        "stage": e.stage.as_str(),
        "equation": e.equation,
        "kind": e.kind.code(),
        "quantity": e.quantity.name(),
    })
}

/// The report as a JSON value with keys in schema order.
pub fn report_json(report: &WatchReport, date: Option<&str>) -> Value {
    let p = report.input.raw();
    let mut exponents = Map::new();
    exponents.insert(
        "scaled_times".into(),
        Value::Object(section(report, Section::ScaledTimes)),
    );
    exponents.extend(section(report, Section::Exponents));

    let state = |s: Option<daywatch_core::SystemState>| s.map(|s| s.as_str());
    let f = &report.flags;
    let mut watch = Map::new();
    watch.insert("trade_volume_pct".into(), num(report.trade_volume_pct()));
    watch.insert(
        "distance_chain".into(),
        nested(report, Section::DistanceChain),
    );
    watch.insert(
        "probability_chain".into(),
        nested(report, Section::ProbabilityChain),
    );
    watch.insert(
        "p_false_alarm_raw".into(),
        num(report.false_alarm.map(|p| p.raw)),
    );
    watch.insert(
        "p_false_alarm".into(),
        num(report.false_alarm.map(|p| p.clamped)),
    );
    watch.insert("p_miss_raw".into(), num(report.miss.map(|p| p.raw)));
    watch.insert("p_miss".into(), num(report.miss.map(|p| p.clamped)));

    json!({
        "input": {
            "date": date,
            "t6_1": p.t6_1,
            "t6_2": p.t6_2,
            "t16": p.t16,
            "t24": p.t24,
            "k_c": p.k_c,
            "c_0": p.c_0,
            "delta": p.delta,
        },
        "exponents": exponents,
        "grid_model": section(report, Section::GridModel),
        "potentials": section(report, Section::Potentials),
        "distances": section(report, Section::Distances),
        "probabilities": section(report, Section::Probabilities),
        "states": {
            "market_state": state(report.market_state),
            "grid_state": state(report.grid_state),
            "threat_level": report.threat_level().map(|t| t.as_str()),
        },
        "watch": watch,
        "flags": {
            "paper_gap_flag": f.paper_gap_flag,
            "valid_percentage": f.valid_percentage,
            "v1_in_unit_interval": f.v1_in_unit_interval,
            "ps_out_of_range": f.ps_out_of_range,
            "pt_out_of_range": f.pt_out_of_range,
            "pg_out_of_range": f.pg_out_of_range,
            "pf_out_of_range": f.pf_out_of_range,
            "pm_out_of_range": f.pm_out_of_range,
            "pg_undefined": f.pg_undefined,
            "errors": report.errors.iter().map(error_json).collect::<Vec<_>>(),
        },
    })
}

/// Shortest round-trip form, switching to exponent notation for very small
/// or very large magnitudes.
pub fn fmt_f64(v: f64) -> String {
    let a = v.abs();
    if a != 0.0 && !(1e-4..1e15).contains(&a) {
        format!("{v:e}")
    } else {
        format!("{v}")
    }
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(|| "undefined".to_string(), fmt_f64)
}

fn fmt_flag(v: Option<bool>) -> String {
    v.map_or_else(|| "undefined".to_string(), |b| b.to_string())
}

/// Human-readable table of the same fields as the JSON report.
pub fn report_text(report: &WatchReport, date: Option<&str>) -> String {
    let mut out = String::new();
    let p = report.input.raw();
    let _ = writeln!(out, "record {}", date.unwrap_or("-"));

    let heading = |out: &mut String, name: &str| {
        let _ = writeln!(out, "{name}");
    };

    heading(&mut out, "input");
    for (k, v) in [
        ("t6_1", p.t6_1),
        ("t6_2", p.t6_2),
        ("t16", p.t16),
        ("t24", p.t24),
        ("k_c", p.k_c),
        ("c_0", p.c_0),
        ("delta", p.delta),
    ] {
        let _ = writeln!(out, "  {k:<22}{}", fmt_f64(v));
    }

    let mut current = None;
    for (q, v) in report.trace.iter() {
        if matches!(q, Quantity::FalseAlarmRaw | Quantity::MissRaw) {
            continue;
        }
        let sec = section_title(q);
        if current != Some(sec) {
            heading(&mut out, sec);
            current = Some(sec);
        }
        let _ = writeln!(out, "  {:<22}{}", q.name(), fmt_opt(v));
    }

    let state = |s: Option<daywatch_core::SystemState>| {
        s.map_or_else(|| "undefined".to_string(), |s| s.to_string())
    };
    heading(&mut out, "states");
    let _ = writeln!(
        out,
        "  {:<22}{}",
        "market_state",
        state(report.market_state)
    );
    let _ = writeln!(out, "  {:<22}{}", "grid_state", state(report.grid_state));
    let _ = writeln!(
        out,
        "  {:<22}{}",
        "threat_level",
        report
            .threat_level()
            .map_or_else(|| "undefined".to_string(), |t| t.to_string())
    );

    heading(&mut out, "watch");
    for (k, p) in [
        ("p_false_alarm", report.false_alarm),
        ("p_miss", report.miss),
    ] {
        let _ = writeln!(
            out,
            "  {:<22}{}",
            format!("{k}_raw"),
            fmt_opt(p.map(|p| p.raw))
        );
        let _ = writeln!(out, "  {k:<22}{}", fmt_opt(p.map(|p| p.clamped)));
    }

    let f = &report.flags;
    heading(&mut out, "flags");
    let _ = writeln!(out, "  {:<22}{}", "paper_gap_flag", f.paper_gap_flag);
    for (k, v) in [
        ("valid_percentage", f.valid_percentage),
        ("v1_in_unit_interval", f.v1_in_unit_interval),
        ("ps_out_of_range", f.ps_out_of_range),
        ("pt_out_of_range", f.pt_out_of_range),
        ("pg_out_of_range", f.pg_out_of_range),
        ("pf_out_of_range", f.pf_out_of_range),
        ("pm_out_of_range", f.pm_out_of_range),
    ] {
        let _ = writeln!(out, "  {k:<22}{}", fmt_flag(v));
    }
    let _ = writeln!(out, "  {:<22}{}", "pg_undefined", f.pg_undefined);
    if report.errors.is_empty() {
        let _ = writeln!(out, "errors: none");
    } else {
        let _ = writeln!(out, "errors:");
        for e in &report.errors {
            let _ = writeln!(out, "  {e}");
        }
    }
    out
}

fn section_title(q: Quantity) -> &'static str {
    match q.section() {
        Section::ScaledTimes => "scaled times",
        Section::Exponents => "exponents",
        Section::GridModel => "grid model",
        Section::Potentials => "potentials",
        Section::Distances => "distances",
        Section::Probabilities => "probabilities",
        Section::Watch => "trade volume",
        Section::DistanceChain => "distance chain",
        Section::ProbabilityChain => "probability chain",
    }
}

/// One record's report in the requested format, without a trailing newline
/// for JSON.
pub fn emit_report(report: &WatchReport, date: Option<&str>, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => to_pretty(&report_json(report, date)),
        OutputFormat::Text => report_text(report, date),
    }
}

pub fn to_pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values always serialize")
}
