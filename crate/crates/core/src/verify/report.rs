use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::case::VerificationCase;
use crate::character::EmbeddingReport;

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Failure inside a stage; the report is cut off after it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StageError {
    pub message: String,
    /// A broken internal invariant rather than bad input.
    pub internal: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StageReport {
    pub id: String,
    pub claim: String,
    /// `None` when the stage did not finish.
    pub verdict: Option<bool>,
    pub artifacts: BTreeMap<String, Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<StageError>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

impl StageReport {
    pub fn passed(&self) -> bool {
        self.verdict == Some(true)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub tool_version: String,
    pub case: VerificationCase,
    pub stages: Vec<StageReport>,
    /// Id of the stage that raised an error, if any.
    pub failed_stage: Option<String>,
    pub overall: bool,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub(crate) fn new(case: VerificationCase) -> Self {
        VerificationReport {
            schema_version: SCHEMA_VERSION,
            tool_version: TOOL_VERSION.to_string(),
            case,
            stages: Vec::new(),
            failed_stage: None,
            overall: false,
            notes: Vec::new(),
        }
    }

    pub(crate) fn finish(mut self) -> Self {
        self.overall = self.failed_stage.is_none()
            && !self.stages.is_empty()
            && self.stages.iter().all(StageReport::passed);
        self
    }

    pub fn stage(&self, id: &str) -> Option<&StageReport> {
        self.stages.iter().find(|s| s.id == id)
    }

    /// True when a stage error is an internal consistency failure.
    pub fn has_internal_error(&self) -> bool {
        self.stages
            .iter()
            .any(|s| s.error.as_ref().is_some_and(|e| e.internal))
    }
}

/// Several reports run together.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub schema_version: u32,
    pub tool_version: String,
    pub reports: Vec<VerificationReport>,
    pub overall: bool,
}

impl SuiteReport {
    pub fn new(reports: Vec<VerificationReport>) -> Self {
        SuiteReport {
            schema_version: SCHEMA_VERSION,
            tool_version: TOOL_VERSION.to_string(),
            overall: !reports.is_empty() && reports.iter().all(|r| r.overall),
            reports,
        }
    }
}

/// Outcome of the exhaustive minimal-degree search behind an embedding verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionCertificate {
    pub group: String,
    pub m: u64,
    pub obstructed: bool,
    /// Minimal real dimension of a faithful representation.
    pub optimum: u64,
    pub witness_degrees: Vec<u64>,
    pub witness_indicators: Vec<i8>,
    pub candidate_units: usize,
    pub nodes: u64,
    pub pruned: u64,
    pub exhausted: bool,
    /// The search ran to completion and every faithful cover weighs more than `m`.
    pub no_faithful_cover_within_m: bool,
}

impl ObstructionCertificate {
    pub fn from_report(r: &EmbeddingReport) -> Self {
        let md = &r.min_degree;
        ObstructionCertificate {
            group: r.group.to_string(),
            m: r.m,
            obstructed: r.is_obstructed(),
            optimum: md.degree,
            witness_degrees: md.witness.iter().map(|u| u.real_degree).collect(),
            witness_indicators: md.witness.iter().map(|u| u.indicator).collect(),
            candidate_units: md.stats.candidate_units,
            nodes: md.stats.nodes,
            pruned: md.stats.pruned,
            exhausted: md.stats.exhausted,
            no_faithful_cover_within_m: md.stats.exhausted && md.degree > r.m,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportFormat {
    Json,
    Markdown,
}

impl std::str::FromStr for ReportFormat {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(ReportFormat::Json),
            "markdown" | "md" => Ok(ReportFormat::Markdown),
            _ => Err(crate::Error::parse("report format", s, "expected json or markdown")),
        }
    }
}

/// Deterministic rendering of a report.
pub fn emit_report(report: &VerificationReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => to_json(report),
        ReportFormat::Markdown => {
            let mut out = String::new();
            write_markdown(&mut out, report, "#");
            out
        }
    }
}

pub fn emit_suite(suite: &SuiteReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => to_json(suite),
        ReportFormat::Markdown => {
            let mut out = String::from("# Verification suite\n\n");
            let _ = writeln!(out, "Overall: **{}**\n", verdict_word(Some(suite.overall)));
            for r in &suite.reports {
                write_markdown(&mut out, r, "##");
                out.push('\n');
            }
            out
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn verdict_word(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "pass",
        Some(false) => "fail",
        None => "error",
    }
}

fn write_markdown(out: &mut String, r: &VerificationReport, heading: &str) {
    let _ = writeln!(out, "{heading} Verification: {}\n", r.case);
    let _ = writeln!(
        out,
        "Tool version {}, schema {}. Overall: **{}**\n",
        r.tool_version,
        r.schema_version,
        verdict_word(Some(r.overall))
    );
    out.push_str("| # | Stage | Claim | Verdict |\n|---|---|---|---|\n");
    for (i, s) in r.stages.iter().enumerate() {
        let _ = writeln!(
            out,
            "| {} | `{}` | {} | {} |",
            i + 1,
            s.id,
            s.claim.replace('|', "\\|"),
            verdict_word(s.verdict)
        );
    }
    if let Some(id) = &r.failed_stage {
        let msg = r
            .stage(id)
            .and_then(|s| s.error.as_ref())
            .map_or("", |e| e.message.as_str());
        let _ = writeln!(out, "\nStopped at stage `{id}`: {msg}");
    }
    if !r.notes.is_empty() {
        out.push_str("\nNotes:\n\n");
        for n in &r.notes {
            let _ = writeln!(out, "- {n}");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> VerificationReport {
        let mut r = VerificationReport::new(VerificationCase::Family { a: 3, b: 5, c: 1, k: 2 });
        let mut artifacts = BTreeMap::new();
        artifacts.insert("order".to_string(), Value::from(240));
        r.stages.push(StageReport {
            id: "first".into(),
            claim: "a | b".into(),
            verdict: Some(true),
            artifacts,
            error: None,
            elapsed_ms: None,
        });
        r.stages.push(StageReport {
            id: "second".into(),
            claim: "c".into(),
            verdict: None,
            artifacts: BTreeMap::new(),
            error: Some(StageError { message: "boom".into(), internal: true }),
            elapsed_ms: Some(1.5),
        });
        r.failed_stage = Some("second".into());
        r.notes.push("note".into());
        r.finish()
    }

    #[test]
    fn json_round_trip() {
        let r = sample();
        let text = emit_report(&r, ReportFormat::Json);
        let back: VerificationReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
        assert_eq!(emit_report(&back, ReportFormat::Json), text);
    }

    #[test]
    fn partial_report_is_marked() {
        let r = sample();
        assert!(!r.overall);
        assert!(r.has_internal_error());
        let md = emit_report(&r, ReportFormat::Markdown);
        assert!(md.contains("Stopped at stage `second`: boom"));
        assert!(md.contains("a \\| b"));
        assert!(md.contains("| 2 | `second` | c | error |"));
    }

    #[test]
    fn overall_needs_every_stage() {
        let mut r = VerificationReport::new(VerificationCase::Lowdim { d: 6, a: 3, b: 5, c: 1 });
        assert!(!r.clone().finish().overall);
        r.stages.push(StageReport {
            id: "x".into(),
            claim: String::new(),
            verdict: Some(true),
            artifacts: BTreeMap::new(),
            error: None,
            elapsed_ms: None,
        });
        assert!(r.clone().finish().overall);
        r.stages[0].verdict = Some(false);
        assert!(!r.finish().overall);
    }

    #[test]
    fn formats_parse() {
        assert_eq!("json".parse::<ReportFormat>().unwrap(), ReportFormat::Json);
        assert_eq!("MD".parse::<ReportFormat>().unwrap(), ReportFormat::Markdown);
        assert!("xml".parse::<ReportFormat>().is_err());
    }
}
