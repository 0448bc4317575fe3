//! CSV and JSON ingestion of daily parameter records.

use std::fmt;
use std::str::FromStr;

use daywatch_core::{validate, Field, FieldError, InputParameters, RawParameters, ValidationError};
use serde::Deserialize;
use thiserror::Error;

/// Required CSV header, in column order.
pub const CSV_HEADER: [&str; 8] = ["date", "t6_1", "t6_2", "t16", "t24", "k_c", "c_0", "delta"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputFormat {
    Csv,
    Json,
}

impl InputFormat {
    /// Guesses the format from a file extension.
    pub fn from_path(path: &std::path::Path) -> Option<Self> {
        match path.extension()?.to_str()?.to_ascii_lowercase().as_str() {
            "csv" => Some(InputFormat::Csv),
            "json" => Some(InputFormat::Json),
            _ => None,
        }
    }
}

impl FromStr for InputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(InputFormat::Csv),
            "json" => Ok(InputFormat::Json),
            other => Err(format!(
                "unknown input format `{other}` (expected csv or json)"
            )),
        }
    }
}

/// A validated record with its optional pass-through label.
#[derive(Debug, Clone, PartialEq)]
pub struct Record {
    pub date: Option<String>,
    pub params: InputParameters,
}

/// Row numbers are 1-based data rows (the CSV header is not counted) or
/// 1-based array positions.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum RecordError {
    #[error("{}: {detail}", Location(*row))]
    Parse { row: Option<usize>, detail: String },
    #[error("row {row}: {source}")]
    Validation {
        row: usize,
        #[source]
        source: ValidationError,
    },
}

impl RecordError {
    pub fn row(&self) -> Option<usize> {
        match self {
            RecordError::Parse { row, .. } => *row,
            RecordError::Validation { row, .. } => Some(*row),
        }
    }

    /// First offending field of a validation failure.
    pub fn field(&self) -> Option<Field> {
        match self {
            RecordError::Validation { source, .. } => {
                source.violations.first().map(FieldError::field)
            }
            RecordError::Parse { .. } => None,
        }
    }
}

struct Location(Option<usize>);

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Some(row) => write!(f, "row {row}"),
            None => f.write_str("input"),
        }
    }
}

fn parse_error(row: Option<usize>, detail: impl Into<String>) -> RecordError {
    RecordError::Parse {
        row,
        detail: detail.into(),
    }
}

fn checked(row: usize, date: Option<String>, raw: RawParameters) -> Result<Record, RecordError> {
    validate(raw)
        .map(|params| Record { date, params })
        .map_err(|source| RecordError::Validation { row, source })
}

/// Parses and validates every record, preserving order. An empty or
/// whitespace-only input yields no records.
pub fn parse_records(text: &str, format: InputFormat) -> Result<Vec<Record>, RecordError> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    match format {
        InputFormat::Csv => parse_csv(text),
        InputFormat::Json => parse_json(text),
    }
}

fn parse_csv(text: &str) -> Result<Vec<Record>, RecordError> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let header = reader
        .headers()
        .map_err(|e| parse_error(None, e.to_string()))?;
    if header.iter().ne(CSV_HEADER) {
        return Err(parse_error(
            None,
            format!(
                "header must be `{}`, found `{}`",
                CSV_HEADER.join(","),
                header.iter().collect::<Vec<_>>().join(",")
            ),
        ));
    }

    let mut out = Vec::new();
    for (i, row) in reader.records().enumerate() {
        let n = i + 1;
        let row = row.map_err(|e| parse_error(Some(n), e.to_string()))?;
        let date = Some(&row[0]).filter(|d| !d.is_empty()).map(str::to_string);
        let mut raw = RawParameters::default();
        for (field, cell) in Field::ALL.into_iter().zip(row.iter().skip(1)) {
            let value = cell
                .parse::<f64>()
                .map_err(|_| parse_error(Some(n), format!("{field}: `{cell}` is not a number")))?;
            raw.set(field, value);
        }
        out.push(checked(n, date, raw)?);
    }
    Ok(out)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonRecord {
    #[serde(default)]
    date: Option<String>,
    t6_1: f64,
    t6_2: f64,
    t16: f64,
    t24: f64,
    k_c: f64,
    c_0: f64,
    delta: f64,
}

fn parse_json(text: &str) -> Result<Vec<Record>, RecordError> {
    let items: Vec<serde_json::Value> = serde_json::from_str(text)
        .map_err(|e| parse_error(None, format!("expected an array of records: {e}")))?;
    items
        .into_iter()
        .enumerate()
        .map(|(i, item)| {
            let n = i + 1;
            let r: JsonRecord =
                serde_json::from_value(item).map_err(|e| parse_error(Some(n), e.to_string()))?;
            let raw = RawParameters {
                t6_1: r.t6_1,
                t6_2: r.t6_2,
                t16: r.t16,
                t24: r.t24,
                k_c: r.k_c,
                c_0: r.c_0,
                delta: r.delta,
            };
            checked(n, r.date, raw)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const HEADER: &str = "date,t6_1,t6_2,t16,t24,k_c,c_0,delta\n";

    #[test]
    fn csv_single_row() {
        let text = format!("{HEADER}2024-01-15,6,6,16,24,4,50,0.035\n");
        let recs = parse_records(&text, InputFormat::Csv).unwrap();
        assert_eq!(recs.len(), 1);
        assert_eq!(recs[0].date.as_deref(), Some("2024-01-15"));
        assert_eq!(recs[0].params.delta(), 0.035);
    }

    #[test]
    fn empty_inputs_give_no_records() {
        assert!(parse_records("", InputFormat::Csv).unwrap().is_empty());
        assert!(parse_records("  \n", InputFormat::Json).unwrap().is_empty());
        assert!(parse_records(HEADER, InputFormat::Csv).unwrap().is_empty());
        assert!(parse_records("[]", InputFormat::Json).unwrap().is_empty());
    }

    #[test]
    fn validation_error_names_row_and_field() {
        let text = format!("{HEADER},-1,6,16,24,4,50,0.035\n");
        let err = parse_records(&text, InputFormat::Csv).unwrap_err();
        assert_eq!(err.row(), Some(1));
        assert_eq!(err.field(), Some(Field::T61));
    }

    #[test]
    fn parse_error_names_row() {
        let text = format!("{HEADER},6,6,16,24,4,50,0.035\n,6,x,16,24,4,50,0.035\n");
        let err = parse_records(&text, InputFormat::Csv).unwrap_err();
        assert!(matches!(err, RecordError::Parse { row: Some(2), .. }));
        assert!(err.to_string().contains("t6_2"));
    }

    #[test]
    fn wrong_header_is_rejected() {
        let err = parse_records("t6_1,t6_2\n1,2\n", InputFormat::Csv).unwrap_err();
        assert_eq!(err.row(), None);
    }

    #[test]
    fn short_row_is_a_parse_error() {
        let text = format!("{HEADER},6,6,16\n");
        assert!(parse_records(&text, InputFormat::Csv).is_err());
    }

    #[test]
    fn json_records() {
        let text = r#"[
            {"date": "d1", "t6_1": 6, "t6_2": 6, "t16": 16, "t24": 24, "k_c": 4, "c_0": 50, "delta": 0.035},
            {"t6_1": 4, "t6_2": 10, "t16": 10, "t24": 16, "k_c": 3.5, "c_0": 30, "delta": 2}
        ]"#;
        let recs = parse_records(text, InputFormat::Json).unwrap();
        assert_eq!(recs.len(), 2);
        assert_eq!(recs[0].date.as_deref(), Some("d1"));
        assert_eq!(recs[1].date, None);
        assert_eq!(recs[1].params.k_c(), 3.5);
    }

    #[test]
    fn json_errors_carry_positions() {
        let missing = r#"[{"t6_1": 6}]"#;
        assert_eq!(
            parse_records(missing, InputFormat::Json).unwrap_err().row(),
            Some(1)
        );
        let invalid =
            r#"[{"t6_1": 6, "t6_2": 6, "t16": 16, "t24": 24, "k_c": -4, "c_0": 50, "delta": 0}]"#;
        let err = parse_records(invalid, InputFormat::Json).unwrap_err();
        assert_eq!(err.field(), Some(Field::Kc));
        assert_eq!(
            parse_records("{}", InputFormat::Json).unwrap_err().row(),
            None
        );
    }

    #[test]
    fn format_from_extension() {
        use std::path::Path;
        assert_eq!(
            InputFormat::from_path(Path::new("a.CSV")),
            Some(InputFormat::Csv)
        );
        assert_eq!(
            InputFormat::from_path(Path::new("a.json")),
            Some(InputFormat::Json)
        );
        assert_eq!(InputFormat::from_path(Path::new("a")), None);
    }
}
