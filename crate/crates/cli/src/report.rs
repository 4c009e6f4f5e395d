use serde::Serialize;
use serde_json::Value;

use crate::config::ExperimentConfig;
use crate::error::{CliError, Result};

/// Whether the operation produced what it was asked for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Found,
    /// NotFound, Infeasible, a partition certificate, or no ladder at all.
    Negative,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Found => 0,
            Status::Negative => 1,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub kind: &'static str,
    pub parameters: ExperimentConfig,
    pub result: Value,
    pub certificate: Value,
    /// Outcome of the matching verify op; `null` when there is nothing to check.
    pub verification: Option<bool>,
    pub wall_time_ms: u64,
    #[serde(skip)]
    pub status: Status,
    #[serde(skip)]
    pub table: Option<Table>,
}

/// Flat rows for CSV output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Report {
    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string(self).map_err(|e| CliError::Encode(e.to_string()))
    }

    pub fn to_csv(&self) -> Result<String> {
        let table = self.table.as_ref().ok_or(CliError::CsvUnsupported)?;
        let mut w = csv::Writer::from_writer(Vec::new());
        let enc = |e: csv::Error| CliError::Encode(e.to_string());
        w.write_record(&table.header).map_err(enc)?;
        for row in &table.rows {
            w.write_record(row).map_err(enc)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Encode(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| CliError::Encode(e.to_string()))
    }
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    code: &'a str,
    message: String,
}

#[derive(Serialize)]
struct ErrorReport<'a> {
    kind: &'a str,
    error: ErrorBody<'a>,
}

pub fn error_json(kind: &str, err: &CliError) -> String {
    let doc = ErrorReport { kind, error: ErrorBody { code: err.code(), message: err.to_string() } };
    serde_json::to_string(&doc).unwrap_or_else(|_| format!("{{\"kind\":{kind:?}}}"))
}
