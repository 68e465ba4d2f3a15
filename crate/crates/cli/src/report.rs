//! The report emitted by every command, in JSON or text form.

use std::fmt::Write as _;

use indexmap::IndexMap;
use serde::Serialize;
use serde_json::Value as Json;
use usalg_core::{Budget, CheckReport, Named};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SuiteStatus {
    Pass,
    Fail,
    /// A size bound stopped the suite before it finished.
    Budget,
}

/// Outcome of one named invariant suite under `verify`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteResult {
    pub name: String,
    pub status: SuiteStatus,
    /// Number of instances checked.
    pub cases: usize,
    /// First few failing instances, described.
    pub failures: Vec<String>,
    /// Distinct witness labels, in first-seen order.
    pub witnesses: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BudgetNote {
    pub max_carrier: usize,
    pub max_ideals: usize,
    pub tor_depth: usize,
    /// Messages from bounds that were hit.
    pub exceeded: Vec<String>,
}

impl BudgetNote {
    pub fn new(b: &Budget) -> Self {
        BudgetNote {
            max_carrier: b.max_carrier,
            max_ideals: b.max_ideals,
            tor_depth: b.tor_depth,
            exceeded: Vec::new(),
        }
    }
}

/// Field order here is the JSON key order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    #[serde(skip_serializing_if = "IndexMap::is_empty")]
    pub inputs: IndexMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<IndexMap<String, String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<IndexMap<String, String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub modules: Option<IndexMap<String, Json>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub suites: Option<Vec<SuiteResult>>,
    pub timing_ms: Option<u64>,
    pub budget: BudgetNote,
}

fn labels(items: &[Named]) -> IndexMap<String, String> {
    items.iter().map(|n| (n.name.clone(), n.label.clone())).collect()
}

impl Report {
    pub fn new(command: &str, budget: &Budget) -> Self {
        Report {
            command: command.to_string(),
            inputs: IndexMap::new(),
            verdict: None,
            witnesses: None,
            counterexample: None,
            modules: None,
            suites: None,
            timing_ms: None,
            budget: BudgetNote::new(budget),
        }
    }

    pub fn input(mut self, key: &str, value: impl Into<String>) -> Self {
        self.inputs.insert(key.to_string(), value.into());
        self
    }

    /// Copies verdict, witnesses and counterexamples from a library report.
    /// Witnesses are emitted only for a true verdict and counterexamples only
    /// for a false one.
    pub fn with_check(mut self, rep: &CheckReport) -> Self {
        self.verdict = Some(rep.verdict);
        if rep.verdict {
            self.witnesses = Some(labels(&rep.witness));
        } else {
            self.counterexample = Some(labels(&rep.counterexample));
        }
        self
    }

    pub fn summary(mut self, name: &str, value: Json) -> Self {
        self.modules.get_or_insert_with(IndexMap::new).insert(name.to_string(), value);
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        for (k, v) in &self.inputs {
            let _ = writeln!(out, "  {k} = {v}");
        }
        if let Some(v) = self.verdict {
            let _ = writeln!(out, "verdict: {v}");
        }
        for (title, map) in [("witness", &self.witnesses), ("counterexample", &self.counterexample)] {
            for (k, v) in map.iter().flatten() {
                let _ = writeln!(out, "{title} {k} = {v}");
            }
        }
        for (name, value) in self.modules.iter().flatten() {
            let _ = writeln!(out, "{name}:");
            text_value(&mut out, value, 1);
        }
        if let Some(suites) = &self.suites {
            let _ = writeln!(out, "suites:");
            for s in suites {
                let status = match s.status {
                    SuiteStatus::Pass => "pass",
                    SuiteStatus::Fail => "FAIL",
                    SuiteStatus::Budget => "budget",
                };
                let _ = write!(out, "  {:<32} {status:<6} {} cases", s.name, s.cases);
                if !s.witnesses.is_empty() {
                    let _ = write!(out, ", witnesses {}", s.witnesses.join(" "));
                }
                out.push('\n');
                for f in &s.failures {
                    let _ = writeln!(out, "    {f}");
                }
            }
        }
        if let Some(t) = self.timing_ms {
            let _ = writeln!(out, "timing: {t} ms");
        }
        for e in &self.budget.exceeded {
            let _ = writeln!(out, "budget: {e}");
        }
        out
    }
}

fn text_value(out: &mut String, value: &Json, depth: usize) {
    let pad = "  ".repeat(depth);
    match value {
        Json::Object(map) => {
            for (k, v) in map {
                match v {
                    Json::Object(_) => {
                        let _ = writeln!(out, "{pad}{k}:");
                        text_value(out, v, depth + 1);
                    }
                    _ => {
                        let _ = writeln!(out, "{pad}{k}: {}", scalar(v));
                    }
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", scalar(other));
        }
    }
}

fn scalar(v: &Json) -> String {
    match v {
        Json::String(s) => s.clone(),
        Json::Array(items) => items.iter().map(scalar).collect::<Vec<_>>().join(", "),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn key_order_and_omissions() {
        let mut r = Report::new("verify", &Budget::default());
        r.suites = Some(Vec::new());
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.starts_with(r#"{"command":"verify","suites":[],"timing_ms":null,"budget":"#), "{json}");
    }

    #[test]
    fn check_reports_split_by_verdict() {
        let rep = CheckReport::pass("p").with_witness(Named::count("s", 1));
        let r = Report::new("check", &Budget::default()).with_check(&rep);
        assert_eq!(r.witnesses.unwrap()["s"], "1");
        assert!(r.counterexample.is_none());
    }
}
