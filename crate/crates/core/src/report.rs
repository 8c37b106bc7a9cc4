//! Pass/fail reports with provenance-tagged values, rendered as text or as
//! line-delimited JSON records with a fixed key order.

use serde::Serialize;

/// Where a reported number comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// A closed-form expression evaluated at the given parameters.
    PaperFormula,
    /// Computed by the named operation.
    Derived,
    /// Holds by definition.
    Trivial,
}

impl Provenance {
    pub fn name(self) -> &'static str {
        match self {
            Provenance::PaperFormula => "paper-formula",
            Provenance::Derived => "derived",
            Provenance::Trivial => "trivial",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Value {
    pub key: String,
    pub value: String,
    pub provenance: Provenance,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub values: Vec<Value>,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool) -> Self {
        Check {
            name: name.into(),
            passed,
            values: Vec::new(),
        }
    }

    pub fn value(mut self, key: impl Into<String>, value: impl ToString, provenance: Provenance) -> Self {
        self.values.push(Value {
            key: key.into(),
            value: value.to_string(),
            provenance,
        });
        self
    }

    pub fn derived(self, key: impl Into<String>, value: impl ToString) -> Self {
        self.value(key, value, Provenance::Derived)
    }

    pub fn formula(self, key: impl Into<String>, value: impl ToString) -> Self {
        self.value(key, value, Provenance::PaperFormula)
    }

    pub fn trivial(self, key: impl Into<String>, value: impl ToString) -> Self {
        self.value(key, value, Provenance::Trivial)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub command: String,
    pub inputs_digest: String,
    pub checks: Vec<Check>,
}

#[derive(Serialize)]
struct HeaderRecord<'a> {
    record: &'static str,
    command: &'a str,
    inputs_digest: &'a str,
}

#[derive(Serialize)]
struct CheckRecord<'a> {
    record: &'static str,
    #[serde(flatten)]
    check: &'a Check,
}

#[derive(Serialize)]
struct OutcomeRecord {
    record: &'static str,
    passed: bool,
    checks: usize,
    failed: usize,
}

impl Report {
    pub fn new(command: impl Into<String>, inputs_digest: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            inputs_digest: inputs_digest.into(),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, checks: impl IntoIterator<Item = Check>) {
        self.checks.extend(checks);
    }

    /// Conjunction of all check outcomes.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed).count()
    }

    pub fn render_text(&self) -> String {
        let mut out = format!("command: {}\ninputs: {}\n", self.command, self.inputs_digest);
        for c in &self.checks {
            out.push_str(&format!(
                "[{}] {}\n",
                if c.passed { "pass" } else { "FAIL" },
                c.name
            ));
            for v in &c.values {
                out.push_str(&format!(
                    "    {} = {} ({})\n",
                    v.key,
                    v.value,
                    v.provenance.name()
                ));
            }
        }
        out.push_str(&format!(
            "outcome: {} ({} checks, {} failed)\n",
            if self.passed() { "pass" } else { "fail" },
            self.checks.len(),
            self.failed()
        ));
        out
    }

    /// One JSON object per line: a header, one record per check, and the
    /// outcome.
    pub fn render_structured(&self) -> String {
        let mut out = line(&HeaderRecord {
            record: "report",
            command: &self.command,
            inputs_digest: &self.inputs_digest,
        });
        for c in &self.checks {
            out.push_str(&line(&CheckRecord {
                record: "check",
                check: c,
            }));
        }
        out.push_str(&line(&OutcomeRecord {
            record: "outcome",
            passed: self.passed(),
            checks: self.checks.len(),
            failed: self.failed(),
        }));
        out
    }
}

fn line<T: Serialize>(record: &T) -> String {
    serde_json::to_string(record).expect("serializable record") + "\n"
}
