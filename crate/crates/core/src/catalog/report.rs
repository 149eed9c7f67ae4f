use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::closed_form::ClosedForm;
use crate::error::{Error, Result};
use crate::summation::SumResult;

/// Rounds to 15 significant digits for serialization.
fn sig15(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.14e}").parse().unwrap_or(x)
}

fn ser15<S: Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(sig15(*x))
}

/// Outcome of checking one identity.
///
/// Field order is the report column order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub id: String,
    /// Numeric value of the series (NaN if the engine failed).
    #[serde(serialize_with = "ser15")]
    pub lhs: f64,
    /// The exact right-hand side, rendered.
    pub rhs: String,
    #[serde(serialize_with = "ser15")]
    pub abs_diff: f64,
    #[serde(serialize_with = "ser15")]
    pub tol: f64,
    pub pass: bool,
    pub terms: u64,
    #[serde(serialize_with = "ser15")]
    pub seconds: f64,
    #[serde(serialize_with = "ser15")]
    pub rhs_value: f64,
    pub strategy: String,
    #[serde(serialize_with = "ser15")]
    pub error_estimate: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub structural_match: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl VerificationReport {
    pub(crate) fn new(id: &str, lhs: Result<SumResult>, rhs: &ClosedForm, rhs_value: f64, tol: f64, seconds: f64) -> Self {
        match lhs {
            Ok(r) => {
                let abs_diff = (r.value - rhs_value).abs();
                VerificationReport {
                    id: id.to_string(),
                    lhs: r.value,
                    rhs: rhs.to_string(),
                    abs_diff,
                    tol,
                    pass: abs_diff <= tol,
                    terms: r.terms_used,
                    seconds,
                    rhs_value,
                    strategy: r.strategy.to_string(),
                    error_estimate: r.error_estimate,
                    structural_match: None,
                    note: None,
                }
            }
            Err(e) => VerificationReport {
                id: id.to_string(),
                lhs: f64::NAN,
                rhs: rhs.to_string(),
                abs_diff: f64::NAN,
                tol,
                pass: false,
                terms: 0,
                seconds,
                rhs_value,
                strategy: "failed".to_string(),
                error_estimate: f64::NAN,
                structural_match: None,
                note: Some(e.to_string()),
            },
        }
    }

    /// The report with the timing zeroed, for comparing runs.
    pub fn without_timing(&self) -> Self {
        VerificationReport {
            seconds: 0.0,
            ..self.clone()
        }
    }
}

/// Output format of the CLI reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Json,
    Csv,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "text" => Ok(ReportFormat::Text),
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            other => Err(Error::Config(format!("unknown report format `{other}`"))),
        }
    }
}

/// Renders reports: aligned text, one JSON object per line, or CSV with a
/// header row.
pub fn format_reports(reports: &[VerificationReport], format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let mut out = String::new();
            for r in reports {
                out.push_str(&serde_json::to_string(r).expect("report serializes"));
                out.push('\n');
            }
            out
        }
        ReportFormat::Csv => {
            let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
            for r in reports {
                w.serialize(CsvRow::from(r)).expect("report serializes");
            }
            String::from_utf8(w.into_inner().expect("in-memory writer")).expect("csv is utf-8")
        }
        ReportFormat::Text => {
            let mut out = String::new();
            let width = reports.iter().map(|r| r.id.len()).max().unwrap_or(2).max(2);
            let _ = writeln!(
                out,
                "{:<width$}  {:>22}  {:>10}  {:>8}  {:<4}  {:>9}  {:>8}  rhs",
                "id", "lhs", "abs_diff", "tol", "pass", "terms", "seconds"
            );
            for r in reports {
                let _ = write!(
                    out,
                    "{:<width$}  {:>22.15}  {:>10.2e}  {:>8.0e}  {:<4}  {:>9}  {:>8.3}  {}",
                    r.id,
                    r.lhs,
                    r.abs_diff,
                    r.tol,
                    if r.pass { "ok" } else { "FAIL" },
                    r.terms,
                    r.seconds,
                    r.rhs
                );
                if let Some(n) = &r.note {
                    let _ = write!(out, "  [{n}]");
                }
                out.push('\n');
            }
            out
        }
    }
}

/// CSV cannot skip columns per row, so optional fields are always present.
#[derive(Serialize)]
struct CsvRow<'a> {
    id: &'a str,
    #[serde(serialize_with = "ser15")]
    lhs: f64,
    rhs: &'a str,
    #[serde(serialize_with = "ser15")]
    abs_diff: f64,
    #[serde(serialize_with = "ser15")]
    tol: f64,
    pass: bool,
    terms: u64,
    #[serde(serialize_with = "ser15")]
    seconds: f64,
    #[serde(serialize_with = "ser15")]
    rhs_value: f64,
    strategy: &'a str,
    #[serde(serialize_with = "ser15")]
    error_estimate: f64,
    structural_match: Option<bool>,
    note: Option<&'a str>,
}

impl<'a> From<&'a VerificationReport> for CsvRow<'a> {
    fn from(r: &'a VerificationReport) -> Self {
        CsvRow {
            id: &r.id,
            lhs: r.lhs,
            rhs: &r.rhs,
            abs_diff: r.abs_diff,
            tol: r.tol,
            pass: r.pass,
            terms: r.terms,
            seconds: r.seconds,
            rhs_value: r.rhs_value,
            strategy: &r.strategy,
            error_estimate: r.error_estimate,
            structural_match: r.structural_match,
            note: r.note.as_deref(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_form::Rational;
    use crate::summation::Strategy;

    fn sample() -> VerificationReport {
        let rhs = ClosedForm::zeta(Rational::integer(2), 3).unwrap();
        let r = SumResult {
            value: 2.404_113_806_319_188_5,
            error_estimate: 1e-14,
            terms_used: 1_000_000,
            strategy: Strategy::DirectEulerMaclaurin,
        };
        VerificationReport::new("T1.k1", Ok(r), &rhs, 2.404_113_806_319_188_6, 1e-9, 0.25)
    }

    #[test]
    fn json_field_order() {
        let s = format_reports(&[sample()], ReportFormat::Json);
        let keys = ["\"id\"", "\"lhs\"", "\"rhs\"", "\"abs_diff\"", "\"tol\"", "\"pass\"", "\"terms\"", "\"seconds\""];
        let mut last = 0;
        for k in keys {
            let at = s.find(k).unwrap_or_else(|| panic!("missing {k}"));
            assert!(at >= last, "{k} out of order in {s}");
            last = at;
        }
        assert!(s.contains("\"rhs\":\"2*zeta(3)\""));
        assert!(s.contains("\"lhs\":2.40411380631919"));
        assert_eq!(s.lines().count(), 1);
    }

    #[test]
    fn csv_header_order() {
        let s = format_reports(&[sample()], ReportFormat::Csv);
        let header = s.lines().next().unwrap();
        assert!(header.starts_with("id,lhs,rhs,abs_diff,tol,pass,terms,seconds"));
        assert_eq!(s.lines().count(), 2);
    }

    #[test]
    fn failure_report() {
        let rhs = ClosedForm::zeta(Rational::ONE, 3).unwrap();
        let r = VerificationReport::new("X", Err(Error::NoConvergence("budget".into())), &rhs, 1.2, 1e-9, 0.0);
        assert!(!r.pass);
        assert!(r.note.as_deref().unwrap().contains("budget"));
        let s = format_reports(&[r], ReportFormat::Json);
        assert!(s.contains("\"lhs\":null"));
    }

    #[test]
    fn format_parsing() {
        assert_eq!("JSON".parse::<ReportFormat>().unwrap(), ReportFormat::Json);
        assert!("xml".parse::<ReportFormat>().is_err());
    }
}
