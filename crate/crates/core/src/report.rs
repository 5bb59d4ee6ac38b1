//! Reports shared by all synthesis and checking commands.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::Serialize;

use crate::model::{Mode, QueryKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Found,
    NotFound,
}

/// Verification of one mapping against a view set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MappingRecord {
    pub mapping: usize,
    pub sound: bool,
    pub nonempty: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<bool>,
    /// A member of `q_s[V]` (an answer tuple or word).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nonempty_witness: Option<String>,
    /// A member of `q_s[V]` not in `q_t`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
    /// A member of `q_t` not in `q_s[V]`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub missing: Option<String>,
}

impl MappingRecord {
    pub fn holds(&self) -> bool {
        self.sound && self.nonempty && self.exact != Some(false)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Solution {
    /// Source symbol name to view text (`empty`, a regular expression or rules).
    pub views: BTreeMap<String, String>,
    pub verification: Vec<MappingRecord>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Statistics {
    pub assignments_tried: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub monoid_size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub view_candidates: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bounds: Option<BTreeMap<String, usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SynthesisReport {
    pub tool: String,
    pub version: String,
    pub kind: QueryKind,
    pub mode: Mode,
    pub maximal: bool,
    pub outcome: Outcome,
    pub solutions: Vec<Solution>,
    pub statistics: Statistics,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl SynthesisReport {
    pub fn new(kind: QueryKind, mode: Mode, maximal: bool, solutions: Vec<Solution>, statistics: Statistics) -> Self {
        SynthesisReport {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            kind,
            mode,
            maximal,
            outcome: if solutions.is_empty() {
                Outcome::NotFound
            } else {
                Outcome::Found
            },
            solutions,
            statistics,
            seed: None,
        }
    }

    pub fn found(&self) -> bool {
        self.outcome == Outcome::Found
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    /// Views in the views-file format, one block per solution.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        match self.outcome {
            Outcome::Found => {
                let _ = writeln!(out, "# found ({} {}, {} solution(s))", self.kind, self.mode, self.solutions.len());
            }
            Outcome::NotFound => {
                let _ = writeln!(out, "# not found ({} {})", self.kind, self.mode);
            }
        }
        for (i, s) in self.solutions.iter().enumerate() {
            if self.solutions.len() > 1 {
                let _ = writeln!(out, "# solution {}", i + 1);
            }
            for (name, text) in &s.views {
                let _ = writeln!(out, "view {name} = {text}");
            }
            for r in &s.verification {
                out.push_str(&describe_record(r));
            }
        }
        let st = &self.statistics;
        let _ = write!(out, "# assignments tried: {}", st.assignments_tried);
        if let Some(m) = st.monoid_size {
            let _ = write!(out, ", monoid size: {m}");
        }
        if let Some(c) = st.view_candidates {
            let _ = write!(out, ", view candidates: {c}");
        }
        if let Some(b) = &st.bounds {
            for (k, v) in b {
                let _ = write!(out, ", {k}: {v}");
            }
        }
        out.push('\n');
        out
    }
}

/// One comment line summarizing a mapping verification.
pub fn describe_record(r: &MappingRecord) -> String {
    let yn = |b: bool| if b { "yes" } else { "no" };
    let mut line = format!("# mapping {}: sound {}, nonempty {}", r.mapping, yn(r.sound), yn(r.nonempty));
    if let Some(e) = r.exact {
        line += &format!(", exact {}", yn(e));
    }
    if let Some(w) = &r.nonempty_witness {
        line += &format!("; witness {w}");
    }
    if let Some(w) = &r.counterexample {
        line += &format!("; counterexample {w}");
    }
    if let Some(w) = &r.missing {
        line += &format!("; missing {w}");
    }
    line.push('\n');
    line
}

/// Result of `check`: capture of given views.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub tool: String,
    pub version: String,
    pub kind: QueryKind,
    pub mode: Mode,
    pub holds: bool,
    pub verification: Vec<MappingRecord>,
}

impl CheckReport {
    pub fn new(kind: QueryKind, mode: Mode, verification: Vec<MappingRecord>) -> Self {
        CheckReport {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            kind,
            mode,
            holds: verification.iter().all(MappingRecord::holds),
            verification,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{} ({} {})\n",
            if self.holds { "captures" } else { "does not capture" },
            self.kind,
            self.mode
        );
        for r in &self.verification {
            out.push_str(&describe_record(r));
        }
        out
    }
}

/// Result of `contain`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContainReport {
    pub kind: QueryKind,
    pub holds: bool,
    /// A word or disjunct of the left query outside the right one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl ContainReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        match &self.counterexample {
            None if self.holds => "contained\n".to_string(),
            None => "not contained\n".to_string(),
            Some(w) => format!("not contained; counterexample: {w}\n"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonoidElement {
    pub element: usize,
    pub witness: String,
    pub relation: String,
    pub accepting: bool,
    /// Realized by a word over the view alphabet.
    pub view_candidate: bool,
}

/// Result of `monoid`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonoidReport {
    pub states: usize,
    pub elements: Vec<MonoidElement>,
}

impl MonoidReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("# {} states, {} elements\n", self.states, self.elements.len());
        for e in &self.elements {
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}{}",
                e.element,
                e.witness,
                e.relation,
                if e.accepting { "accepting" } else { "-" },
                if e.view_candidate { "" } else { "\t(not a view)" }
            );
        }
        out
    }
}
