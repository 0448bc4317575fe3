//! Batch ingestion, report serialization, sweeps and the oracle suite behind
//! the `daywatch` command.

pub mod check;
pub mod records;
pub mod report;
pub mod sweep;

use daywatch_core::{run_watch, RunConfig, WatchReport};
use rayon::prelude::*;
use serde_json::Value;

pub use records::{parse_records, InputFormat, Record, RecordError};
pub use report::{emit_report, report_json, OutputFormat};
pub use sweep::{sweep, SweepEntry, SweepSpec, SweepSpecError};

/// Every record evaluated cleanly.
pub const EXIT_OK: i32 = 0;
/// A check failed, or the command line was malformed.
pub const EXIT_FAILURE: i32 = 1;
/// At least one record raised a flag or a domain error.
pub const EXIT_DEGRADED: i32 = 2;
/// The input could not be read, parsed or validated.
pub const EXIT_UNPARSEABLE: i32 = 3;

/// Evaluates records in parallel; results keep input order.
pub fn run_batch(records: &[Record], config: &RunConfig) -> Vec<WatchReport> {
    records
        .par_iter()
        .map(|r| run_watch(&r.params, config))
        .collect()
}

pub fn batch_exit_code(reports: &[WatchReport]) -> i32 {
    if reports.iter().any(WatchReport::is_degraded) {
        EXIT_DEGRADED
    } else {
        EXIT_OK
    }
}

/// A JSON array of reports, or text reports separated by blank lines.
pub fn emit_batch(records: &[Record], reports: &[WatchReport], format: OutputFormat) -> String {
    let dates = records.iter().map(|r| r.date.as_deref());
    match format {
        OutputFormat::Json => {
            let all: Vec<Value> = reports
                .iter()
                .zip(dates)
                .map(|(rep, d)| report_json(rep, d))
                .collect();
            report::to_pretty(&Value::Array(all))
        }
        OutputFormat::Text => reports
            .iter()
            .zip(dates)
            .map(|(rep, d)| report::report_text(rep, d))
            .collect::<Vec<_>>()
            .join("\n"),
    }
}
