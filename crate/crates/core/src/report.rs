//! Verdicts shared by every criterion, with optional witnesses.

use std::collections::BTreeMap;
use std::fmt;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::folding::CodeParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Criterion {
    Parameters,
    Census,
    ShiftAdd,
    SetPolynomial,
    Determinant,
    TraceIndependence,
    SufficientConditions,
    /// Conjunction of parameters, census and shift-add.
    Prac,
}

impl Criterion {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Parameters => "parameters",
            Self::Census => "census",
            Self::ShiftAdd => "shift-add",
            Self::SetPolynomial => "set-polynomial",
            Self::Determinant => "determinant",
            Self::TraceIndependence => "trace-independence",
            Self::SufficientConditions => "sufficient-conditions",
            Self::Prac => "prac",
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    /// The criterion could not be decided, e.g. a census beyond the table bound.
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Pass => "pass",
            Self::Fail => "fail",
            Self::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WindowIssue {
    /// The all-zero window occurs.
    Zero,
    /// The window already occurred at `first`.
    Duplicate { first: WindowPosition },
    /// No window carries this code.
    Missing,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WindowPosition {
    pub array: usize,
    pub row: usize,
    pub col: usize,
}

impl fmt::Display for WindowPosition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "array {} at ({}, {})", self.array, self.row, self.col)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    /// A census failure; `position` is absent for missing codes.
    Window {
        issue: WindowIssue,
        position: Option<WindowPosition>,
        code: u64,
        /// Window rows as `0`/`1` strings.
        bits: Vec<String>,
    },
    /// `arrays[a] + shift(arrays[b], dv, dh)` is neither zero nor a codeword shift.
    ShiftAdd {
        a: usize,
        b: usize,
        dv: usize,
        dh: usize,
        sum: Vec<String>,
    },
    /// A nontrivial linear relation among the listed indices.
    Dependency {
        indices: Vec<usize>,
    },
    Message {
        text: String,
    },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Window { issue, position, code, bits } => {
                let what = match issue {
                    WindowIssue::Zero => "all-zero window".to_string(),
                    WindowIssue::Duplicate { first } => format!("duplicate window (first seen in {first})"),
                    WindowIssue::Missing => "missing window".to_string(),
                };
                write!(f, "{what} code {code} [{}]", bits.join("/"))?;
                if let Some(p) = position {
                    write!(f, " in {p}")?;
                }
                Ok(())
            }
            Self::ShiftAdd { a, b, dv, dh, sum } => {
                write!(f, "array {a} + array {b} shifted by ({dv}, {dh}) = [{}] is not a codeword shift", sum.join("/"))
            }
            Self::Dependency { indices } => write!(f, "linear dependency among indices {indices:?}"),
            Self::Message { text } => f.write_str(text),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerdictReport {
    pub criterion: Criterion,
    pub params: Option<CodeParams>,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub note: Option<String>,
    pub counts: BTreeMap<String, u64>,
    /// Sub-verdicts of a conjunction, in evaluation order.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<VerdictReport>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl VerdictReport {
    pub fn new(criterion: Criterion, params: Option<CodeParams>, verdict: Verdict) -> Self {
        Self {
            criterion,
            params,
            verdict,
            witness: None,
            note: None,
            counts: BTreeMap::new(),
            checks: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    pub fn pass(criterion: Criterion, params: Option<CodeParams>) -> Self {
        Self::new(criterion, params, Verdict::Pass)
    }

    pub fn fail(criterion: Criterion, params: Option<CodeParams>, witness: Witness) -> Self {
        Self::new(criterion, params, Verdict::Fail).with_witness(witness)
    }

    pub fn from_bool(criterion: Criterion, params: Option<CodeParams>, ok: bool) -> Self {
        Self::new(criterion, params, if ok { Verdict::Pass } else { Verdict::Fail })
    }

    pub fn with_witness(mut self, witness: Witness) -> Self {
        self.witness = Some(witness);
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn with_count(mut self, key: &str, value: u64) -> Self {
        self.counts.insert(key.to_string(), value);
        self
    }

    pub fn timed(mut self, start: Instant) -> Self {
        self.elapsed = start.elapsed();
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

impl fmt::Display for VerdictReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:<22} {}", self.criterion.as_str(), self.verdict)?;
        if let Some(p) = &self.params {
            write!(f, "  {p}")?;
        }
        if let Some(n) = &self.note {
            write!(f, "  ({n})")?;
        }
        for (k, v) in &self.counts {
            write!(f, "  {k}={v}")?;
        }
        if let Some(w) = &self.witness {
            write!(f, "\n    witness: {w}")?;
        }
        for c in &self.checks {
            let nested = c.to_string().replace('\n', "\n  ");
            write!(f, "\n  {nested}")?;
        }
        Ok(())
    }
}
