//! Convergence traces: a CSV of per-iteration rows plus a JSON summary.

use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::hpd::CMatrix;
use crate::solver::TraceRow;

pub const TRACE_HEADER: [&str; 6] = [
    "k",
    "thompson_gap",
    "error_bound",
    "residual1",
    "residual2",
    "dist_to_identity",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceSummary {
    pub solution: CMatrix,
    pub alpha_used: f64,
    pub stop_reason: String,
    pub seed: u64,
    pub iterations: usize,
    /// `[residual1, residual2]` of the final iterate.
    pub residuals: [f64; 2],
    /// `d(X, I)` of the final iterate.
    pub dist: f64,
    pub certified: bool,
}

#[derive(Debug)]
pub enum TraceError {
    Io(String),
    Header(String),
    /// 1-based data row (header excluded).
    Row {
        row: usize,
        message: String,
    },
    Empty,
}

impl fmt::Display for TraceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Io(m) => write!(f, "{m}"),
            Self::Header(m) => write!(f, "bad trace header: {m}"),
            Self::Row { row, message } => write!(f, "bad trace row {row}: {message}"),
            Self::Empty => write!(f, "trace has no rows"),
        }
    }
}

impl std::error::Error for TraceError {}

/// Companion JSON path: `run.csv` → `run.json`.
pub fn summary_path(csv: &Path) -> PathBuf {
    csv.with_extension("json")
}

pub fn write_trace<W: std::io::Write>(out: W, rows: &[TraceRow]) -> Result<(), TraceError> {
    let mut w = csv::Writer::from_writer(out);
    // serialize writes the header from the field names, which match TRACE_HEADER
    for row in rows {
        w.serialize(row)
            .map_err(|e| TraceError::Io(e.to_string()))?;
    }
    if rows.is_empty() {
        w.write_record(TRACE_HEADER)
            .map_err(|e| TraceError::Io(e.to_string()))?;
    }
    w.flush().map_err(|e| TraceError::Io(e.to_string()))
}

pub fn read_trace<R: std::io::Read>(input: R) -> Result<Vec<TraceRow>, TraceError> {
    let mut r = csv::Reader::from_reader(input);
    let header = r
        .headers()
        .map_err(|e| TraceError::Header(e.to_string()))?
        .clone();
    let found: Vec<&str> = header.iter().collect();
    if found != TRACE_HEADER {
        return Err(TraceError::Header(format!(
            "expected {}, found {}",
            TRACE_HEADER.join(","),
            found.join(",")
        )));
    }
    let mut rows = Vec::new();
    for (i, record) in r.deserialize::<TraceRow>().enumerate() {
        let row = record.map_err(|e| TraceError::Row {
            row: i + 1,
            message: e.to_string(),
        })?;
        rows.push(row);
    }
    Ok(rows)
}

pub fn write_trace_file(
    path: &Path,
    rows: &[TraceRow],
    summary: &TraceSummary,
) -> Result<(), TraceError> {
    let io = |e: std::io::Error| TraceError::Io(format!("{}: {e}", path.display()));
    let file = std::fs::File::create(path).map_err(io)?;
    write_trace(file, rows)?;
    let json = serde_json::to_string_pretty(summary).map_err(|e| TraceError::Io(e.to_string()))?;
    let spath = summary_path(path);
    std::fs::write(&spath, json + "\n")
        .map_err(|e| TraceError::Io(format!("{}: {e}", spath.display())))
}

pub fn read_trace_file(path: &Path) -> Result<Vec<TraceRow>, TraceError> {
    let file = std::fs::File::open(path)
        .map_err(|e| TraceError::Io(format!("{}: {e}", path.display())))?;
    read_trace(file)
}
