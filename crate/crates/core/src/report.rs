use std::fmt;

/// Payload of a named witness or counterexample entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    /// Ring element index.
    Ring(usize),
    /// Module element index.
    Module(usize),
    /// A subset of a ring or module carrier (ideal, submodule), as indices.
    Subset(Vec<usize>),
    Flag(bool),
    Count(usize),
}

/// One named entry of a report: the value plus its human-readable rendering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Named {
    pub name: String,
    pub value: Value,
    pub label: String,
}

impl Named {
    pub fn new(name: impl Into<String>, value: Value, label: impl Into<String>) -> Self {
        Named {
            name: name.into(),
            value,
            label: label.into(),
        }
    }

    pub fn flag(name: impl Into<String>, flag: bool) -> Self {
        Named::new(name, Value::Flag(flag), flag.to_string())
    }

    pub fn count(name: impl Into<String>, n: usize) -> Self {
        Named::new(name, Value::Count(n), n.to_string())
    }

    pub fn ring_elem(&self) -> Option<usize> {
        match self.value {
            Value::Ring(a) => Some(a),
            _ => None,
        }
    }
}

/// Verdict plus the explicit data certifying it.
///
/// A true verdict carries witnesses that make the defining condition hold when
/// replayed; a false verdict carries counterexamples that make it fail.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CheckReport {
    pub verdict: bool,
    pub witness: Vec<Named>,
    pub counterexample: Vec<Named>,
    /// Auxiliary facts (flags, counts, secondary verdicts).
    pub extra: Vec<Named>,
    pub detail: String,
}

impl CheckReport {
    pub fn pass(detail: impl Into<String>) -> Self {
        CheckReport {
            verdict: true,
            detail: detail.into(),
            ..Default::default()
        }
    }

    pub fn fail(detail: impl Into<String>) -> Self {
        CheckReport {
            verdict: false,
            detail: detail.into(),
            ..Default::default()
        }
    }

    pub fn with_witness(mut self, n: Named) -> Self {
        self.witness.push(n);
        self
    }

    pub fn with_counterexample(mut self, n: Named) -> Self {
        self.counterexample.push(n);
        self
    }

    pub fn with_extra(mut self, n: Named) -> Self {
        self.extra.push(n);
        self
    }

    fn lookup<'a>(list: &'a [Named], name: &str) -> Option<&'a Named> {
        list.iter().find(|n| n.name == name)
    }

    pub fn witness(&self, name: &str) -> Option<&Named> {
        Self::lookup(&self.witness, name)
    }

    pub fn counterexample(&self, name: &str) -> Option<&Named> {
        Self::lookup(&self.counterexample, name)
    }

    pub fn extra(&self, name: &str) -> Option<&Named> {
        Self::lookup(&self.extra, name)
    }

    /// Ring element stored under witness `name`.
    pub fn witness_elem(&self, name: &str) -> Option<usize> {
        self.witness(name).and_then(Named::ring_elem)
    }

    pub fn extra_flag(&self, name: &str) -> Option<bool> {
        match self.extra(name)?.value {
            Value::Flag(b) => Some(b),
            _ => None,
        }
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", if self.verdict { "true" } else { "false" })?;
        if !self.detail.is_empty() {
            write!(f, " ({})", self.detail)?;
        }
        for n in &self.witness {
            write!(f, "\n  witness {} = {}", n.name, n.label)?;
        }
        for n in &self.counterexample {
            write!(f, "\n  counterexample {} = {}", n.name, n.label)?;
        }
        for n in &self.extra {
            write!(f, "\n  {} = {}", n.name, n.label)?;
        }
        Ok(())
    }
}
