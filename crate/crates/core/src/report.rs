//! Rendering of verification reports as a human table, JSON or CSV.
//!
//! JSON and CSV share the columns
//! `identity, params, lhs, rhs, matched, terms, elapsed_ns` (plus `failure`).
//! Timings are nondeterministic, so unless requested `elapsed_ns` is written
//! as 0 to keep output byte-stable.

use std::fmt::Write as _;
use std::str::FromStr;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::identities::VerificationReport;
use crate::sweep::{SweepOutcome, SweepSummary};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Table,
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "table" => Ok(Format::Table),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(Error::domain(format!("unknown format {other:?}"))),
        }
    }
}

fn normalized(report: &VerificationReport, timings: bool) -> VerificationReport {
    let mut r = report.clone();
    if !timings {
        r.elapsed = Duration::ZERO;
    }
    r
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(T::to_string).unwrap_or_else(|| "-".into())
}

const CSV_HEADER: [&str; 8] =
    ["identity", "params", "lhs", "rhs", "matched", "terms", "elapsed_ns", "failure"];

fn csv_rows(reports: &[VerificationReport], timings: bool) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::internal(format!("csv: {e}"));
    w.write_record(CSV_HEADER).map_err(io)?;
    for r in reports {
        let r = normalized(r, timings);
        let lhs = r.lhs.map(|v| v.to_string()).unwrap_or_default();
        let rhs = r.rhs.map(|v| v.to_string()).unwrap_or_default();
        let failure = r.failure.as_ref().map(|f| f.message.clone()).unwrap_or_default();
        w.write_record([
            r.instance.name().to_string(),
            r.instance.params_string(),
            lhs,
            rhs,
            r.matched.to_string(),
            r.terms_enumerated.to_string(),
            (r.elapsed.as_nanos() as u64).to_string(),
            failure,
        ])
        .map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::internal(format!("csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::internal(e.to_string()))
}

fn table_rows(reports: &[VerificationReport], timings: bool) -> String {
    let rows: Vec<[String; 6]> = reports
        .iter()
        .map(|r| {
            let status = match (&r.failure, r.matched) {
                (Some(f), _) => format!("{:?}", f.kind).to_lowercase(),
                (None, true) => "ok".into(),
                (None, false) => "MISMATCH".into(),
            };
            let time = if timings { format!("{:.3?}", r.elapsed) } else { String::new() };
            [
                format!("{}({})", r.instance.name(), r.instance.params_string()),
                opt(&r.lhs),
                opt(&r.rhs),
                status,
                r.terms_enumerated.to_string(),
                time,
            ]
        })
        .collect();
    let header = ["instance", "lhs", "rhs", "status", "terms", "elapsed"];
    let mut widths = header.map(str::len);
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let mut line = |cells: &[&str]| {
        let cols = if timings { 6 } else { 5 };
        let text: Vec<String> = cells[..cols].iter().zip(widths).map(|(c, w)| format!("{c:<w$}")).collect();
        let _ = writeln!(out, "{}", text.join("  ").trim_end());
    };
    line(&header);
    for row in &rows {
        line(&row.each_ref().map(String::as_str));
    }
    out
}

/// Renders a single report.
pub fn render_report(report: &VerificationReport, format: Format, timings: bool) -> Result<String> {
    match format {
        Format::Table => Ok(table_rows(std::slice::from_ref(report), timings)),
        Format::Json => {
            let text = serde_json::to_string(&normalized(report, timings))
                .map_err(|e| Error::internal(e.to_string()))?;
            Ok(text + "\n")
        }
        Format::Csv => csv_rows(std::slice::from_ref(report), timings),
    }
}

fn summary_line(s: &SweepSummary) -> String {
    format!("checked={} matched={} mismatched={} skipped={}", s.checked, s.matched, s.mismatched, s.skipped)
}

/// Renders a sweep. Tables list only non-matching instances (or every
/// instance with `all`) followed by the totals; JSON is one document with
/// `reports` and `summary`; CSV holds the reports only.
pub fn render_sweep(outcome: &SweepOutcome, format: Format, timings: bool, all: bool) -> Result<String> {
    match format {
        Format::Table => {
            let shown: Vec<VerificationReport> =
                outcome.reports.iter().filter(|r| all || !r.matched).cloned().collect();
            let mut out = String::new();
            if !shown.is_empty() {
                out.push_str(&table_rows(&shown, timings));
            }
            out.push_str(&summary_line(&outcome.summary));
            out.push('\n');
            Ok(out)
        }
        Format::Json => {
            let doc = SweepOutcome {
                reports: outcome.reports.iter().map(|r| normalized(r, timings)).collect(),
                summary: outcome.summary,
            };
            let text = serde_json::to_string(&doc).map_err(|e| Error::internal(e.to_string()))?;
            Ok(text + "\n")
        }
        Format::Csv => csv_rows(&outcome.reports, timings),
    }
}

/// Summary line for diagnostics.
pub fn render_summary(summary: &SweepSummary) -> String {
    summary_line(summary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::identities::{verify, IdentityInstance, VerifyConfig};

    fn sample() -> Vec<VerificationReport> {
        let cfg = VerifyConfig::default();
        vec![
            verify(&IdentityInstance::Menon { n: 6 }, &cfg),
            verify(&IdentityInstance::MenonSury { n: 500, k: 3 }, &VerifyConfig::with_budget(100)),
        ]
    }

    #[test]
    fn csv_has_stable_columns() {
        let text = csv_rows(&sample(), false).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "identity,params,lhs,rhs,matched,terms,elapsed_ns,failure");
        assert_eq!(lines.next().unwrap(), "menon,n=6,8,8,true,2,0,");
        assert!(lines.next().unwrap().starts_with("menon_sury,n=500 k=3,,"));
    }

    #[test]
    fn json_zeroes_timings_unless_asked() {
        let r = &sample()[0];
        let text = render_report(r, Format::Json, false).unwrap();
        assert!(text.contains(r#""elapsed_ns":0"#));
        let back: VerificationReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, normalized(r, false));
    }

    #[test]
    fn table_marks_status() {
        let text = table_rows(&sample(), false);
        assert!(text.contains("ok"));
        assert!(text.contains("boundexceeded"));
    }

    #[test]
    fn format_parsing() {
        assert_eq!("JSON".parse::<Format>().unwrap(), Format::Json);
        assert!("xml".parse::<Format>().is_err());
    }
}
