//! On-disk JSON form of a benchmark report.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::CliError;
use crate::bench::{per_algorithm_averages, round_half_up_mean, Algorithm, BenchCase, BenchRow, Report};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportFile {
    pub schema_version: String,
    pub environment_label: String,
    pub host_metadata: BTreeMap<String, String>,
    pub created_at: String,
    pub rows: Vec<RowRecord>,
    pub per_algorithm_average_ms: BTreeMap<Algorithm, u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RowRecord {
    pub algorithm: Algorithm,
    pub input_size_bytes: Option<usize>,
    pub key_size_bits: Option<u64>,
    pub include_keygen: bool,
    pub seed: u64,
    pub samples_ms: [u64; 5],
    pub average_ms: u64,
}

impl From<&Report> for ReportFile {
    fn from(report: &Report) -> Self {
        ReportFile {
            schema_version: SCHEMA_VERSION.to_owned(),
            environment_label: report.environment_label.clone(),
            host_metadata: report.host_metadata.clone(),
            created_at: report.created_at.clone(),
            rows: report
                .rows
                .iter()
                .map(|row| RowRecord {
                    algorithm: row.case.algorithm,
                    input_size_bytes: row.case.input_size,
                    key_size_bits: row.case.key_size,
                    include_keygen: row.case.include_keygen,
                    seed: row.case.seed,
                    samples_ms: row.samples_ms,
                    average_ms: row.average_ms,
                })
                .collect(),
            per_algorithm_average_ms: report.per_algorithm_average_ms.clone(),
        }
    }
}

impl ReportFile {
    /// Checks version, timestamp and that every average follows from its samples.
    pub fn into_report(self) -> Result<Report, String> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(format!(
                "unsupported schema_version {:?} (expected {SCHEMA_VERSION:?})",
                self.schema_version
            ));
        }
        chrono::DateTime::parse_from_rfc3339(&self.created_at)
            .map_err(|e| format!("created_at {:?} is not RFC 3339: {e}", self.created_at))?;
        if self.rows.is_empty() {
            return Err("report has no rows".to_owned());
        }
        let mut rows = Vec::with_capacity(self.rows.len());
        for (i, r) in self.rows.into_iter().enumerate() {
            let case = BenchCase {
                algorithm: r.algorithm,
                input_size: r.input_size_bytes,
                key_size: r.key_size_bits,
                include_keygen: r.include_keygen,
                seed: r.seed,
            };
            case.validate().map_err(|e| format!("row {i}: {e}"))?;
            if round_half_up_mean(&r.samples_ms) != Some(r.average_ms) {
                return Err(format!("row {i}: average_ms {} does not match samples", r.average_ms));
            }
            rows.push(BenchRow::from_samples(case, r.samples_ms));
        }
        if per_algorithm_averages(&rows) != self.per_algorithm_average_ms {
            return Err("per_algorithm_average_ms does not match rows".to_owned());
        }
        Ok(Report {
            environment_label: self.environment_label,
            host_metadata: self.host_metadata,
            created_at: self.created_at,
            rows,
            per_algorithm_average_ms: self.per_algorithm_average_ms,
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

pub fn report_to_json(report: &Report) -> String {
    ReportFile::from(report).to_json()
}

pub fn parse_report(text: &str) -> Result<Report, String> {
    let file: ReportFile = serde_json::from_str(text).map_err(|e| format!("malformed report: {e}"))?;
    file.into_report()
}

pub fn read_report(path: &Path) -> Result<Report, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_report(&text).map_err(|e| CliError::Runtime(format!("{}: {e}", path.display())))
}

/// Writes via a temporary file in the target directory, then renames.
pub fn write_atomic(path: &Path, data: &[u8]) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| CliError::io(path, e))?;
    tmp.write_all(data).map_err(|e| CliError::io(path, e))?;
    tmp.as_file().sync_all().map_err(|e| CliError::io(path, e))?;
    tmp.persist(path).map_err(|e| CliError::io(path, e.error))?;
    Ok(())
}
