//! Report records and their JSON/CSV renderings.
//!
//! One record per check, carrying every `VerificationReport` field plus an
//! ISO-8601 timestamp and the tool version, so campaign results stay
//! auditable and diffable. When `SOURCE_DATE_EPOCH` is set it overrides the
//! wall clock, which makes report files reproducible byte for byte.

use anyhow::{bail, Context, Result};
use chrono::{DateTime, SecondsFormat, Utc};
use qcorr::VerificationReport;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub check: String,
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub context: BTreeMap<String, String>,
    pub timestamp: String,
    pub version: String,
}

impl ReportRecord {
    pub fn from_report(report: &VerificationReport, timestamp: &str) -> Self {
        Self {
            check: report.check_name.clone(),
            lhs: report.lhs,
            rhs: report.rhs,
            residual: report.residual,
            tolerance: report.tolerance,
            passed: report.passed,
            seed: report.seed,
            context: report.context.clone(),
            timestamp: timestamp.to_string(),
            version: TOOL_VERSION.to_string(),
        }
    }
}

/// Campaign timestamp: `SOURCE_DATE_EPOCH` (unix seconds) when set, wall
/// clock otherwise.
pub fn campaign_timestamp() -> String {
    if let Ok(epoch) = std::env::var("SOURCE_DATE_EPOCH") {
        if let Ok(secs) = epoch.trim().parse::<i64>() {
            if let Some(dt) = DateTime::<Utc>::from_timestamp(secs, 0) {
                return dt.to_rfc3339_opts(SecondsFormat::Secs, true);
            }
        }
    }
    Utc::now().to_rfc3339_opts(SecondsFormat::Secs, true)
}

pub fn render_json(records: &[ReportRecord]) -> Result<String> {
    let mut text = serde_json::to_string_pretty(records)?;
    text.push('\n');
    Ok(text)
}

pub fn parse_json(text: &str) -> Result<Vec<ReportRecord>> {
    serde_json::from_str(text).context("parsing JSON report")
}

const CSV_HEADER: [&str; 10] = [
    "check",
    "lhs",
    "rhs",
    "residual",
    "tolerance",
    "passed",
    "seed",
    "context",
    "timestamp",
    "version",
];

fn render_context(context: &BTreeMap<String, String>) -> String {
    context
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(";")
}

fn parse_context(text: &str) -> BTreeMap<String, String> {
    let mut map = BTreeMap::new();
    if text.is_empty() {
        return map;
    }
    for chunk in text.split(';') {
        if let Some((k, v)) = chunk.split_once('=') {
            map.insert(k.to_string(), v.to_string());
        }
    }
    map
}

pub fn render_csv(records: &[ReportRecord]) -> Result<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(CSV_HEADER)?;
    for r in records {
        writer.write_record([
            r.check.as_str(),
            &r.lhs.to_string(),
            &r.rhs.to_string(),
            &r.residual.to_string(),
            &r.tolerance.to_string(),
            &r.passed.to_string(),
            &r.seed.map(|s| s.to_string()).unwrap_or_default(),
            &render_context(&r.context),
            &r.timestamp,
            &r.version,
        ])?;
    }
    Ok(String::from_utf8(writer.into_inner()?)?)
}

pub fn parse_csv(text: &str) -> Result<Vec<ReportRecord>> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let mut out = Vec::new();
    for row in reader.records() {
        let row = row.context("parsing CSV report")?;
        if row.len() != CSV_HEADER.len() {
            bail!("CSV row has {} fields, expected {}", row.len(), CSV_HEADER.len());
        }
        out.push(ReportRecord {
            check: row[0].to_string(),
            lhs: row[1].parse().context("field 'lhs'")?,
            rhs: row[2].parse().context("field 'rhs'")?,
            residual: row[3].parse().context("field 'residual'")?,
            tolerance: row[4].parse().context("field 'tolerance'")?,
            passed: row[5].parse().context("field 'passed'")?,
            seed: if row[6].is_empty() {
                None
            } else {
                Some(row[6].parse().context("field 'seed'")?)
            },
            context: parse_context(&row[7]),
            timestamp: row[8].to_string(),
            version: row[9].to_string(),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Vec<ReportRecord> {
        let a = VerificationReport::equality("cluster-additivity", 3.0, 3.0 + 1e-12, 1e-8)
            .with_seed(7)
            .with_context("partition", "{1}|{2,3}".to_string());
        let b = VerificationReport::inequality("ssa", 0.5, 1.5, 1e-9);
        let ts = "2000-01-01T00:00:00Z";
        vec![
            ReportRecord::from_report(&a, ts),
            ReportRecord::from_report(&b, ts),
        ]
    }

    #[test]
    fn json_round_trip_is_byte_identical() {
        let records = sample();
        let once = render_json(&records).unwrap();
        let parsed = parse_json(&once).unwrap();
        assert_eq!(parsed, records);
        assert_eq!(render_json(&parsed).unwrap(), once);
    }

    #[test]
    fn csv_round_trip_is_byte_identical() {
        let records = sample();
        let once = render_csv(&records).unwrap();
        let parsed = parse_csv(&once).unwrap();
        assert_eq!(parsed, records);
        assert_eq!(render_csv(&parsed).unwrap(), once);
        assert!(once.starts_with("check,lhs,rhs,residual,tolerance,passed,seed,context,timestamp,version\n"));
    }

    #[test]
    fn source_date_epoch_pins_the_timestamp() {
        // the env var is process-global; set and restore around the check
        std::env::set_var("SOURCE_DATE_EPOCH", "946684800");
        let stamped = campaign_timestamp();
        std::env::remove_var("SOURCE_DATE_EPOCH");
        assert_eq!(stamped, "2000-01-01T00:00:00Z");
    }
}
