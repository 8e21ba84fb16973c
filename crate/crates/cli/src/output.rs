use std::collections::BTreeMap;
use std::fmt::Write as _;

use prac::folding::CodeParams;
use prac::report::{Verdict, VerdictReport, Witness};
use serde::Serialize;

/// One run's report; serialized as the structured output document.
#[derive(Debug, Serialize)]
pub struct Document {
    pub command: &'static str,
    pub inputs: BTreeMap<String, String>,
    pub params: Option<CodeParams>,
    pub verdicts: Vec<VerdictReport>,
    pub witnesses: Vec<Witness>,
    pub counts: BTreeMap<String, u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agreement: Option<bool>,
    #[serde(skip_serializing_if = "serde_json::Value::is_null")]
    pub result: serde_json::Value,
    pub wall_time: f64,
}

impl Document {
    pub fn new(command: &'static str) -> Self {
        Self {
            command,
            inputs: BTreeMap::new(),
            params: None,
            verdicts: Vec::new(),
            witnesses: Vec::new(),
            counts: BTreeMap::new(),
            agreement: None,
            result: serde_json::Value::Null,
            wall_time: 0.0,
        }
    }

    pub fn input(mut self, key: &str, value: impl ToString) -> Self {
        self.inputs.insert(key.to_string(), value.to_string());
        self
    }

    pub fn push(&mut self, report: VerdictReport) {
        if let Some(w) = &report.witness {
            self.witnesses.push(w.clone());
        }
        self.verdicts.push(report);
    }
}

/// Outcome of a command: the report, its text rendering, the overall verdict
/// that sets the exit status, and an optional file artifact.
pub struct Run {
    pub doc: Document,
    pub text: String,
    pub verdict: Verdict,
    pub artifact: Option<String>,
}

impl Run {
    pub fn new(doc: Document, verdict: Verdict) -> Self {
        Self { doc, text: String::new(), verdict, artifact: None }
    }

    pub fn line(&mut self, line: impl AsRef<str>) {
        self.text.push_str(line.as_ref());
        self.text.push('\n');
    }

    /// Text rendering: body lines, then one line per verdict, then the summary.
    pub fn render_text(&self) -> String {
        let mut out = self.text.clone();
        for v in &self.doc.verdicts {
            let _ = writeln!(out, "{v}");
        }
        if let Some(a) = self.doc.agreement {
            let _ = writeln!(out, "agreement: {a}");
        }
        let _ = writeln!(out, "verdict: {}", self.verdict);
        out
    }

    pub fn render_structured(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.doc).expect("report serializes");
        s.push('\n');
        s
    }
}
