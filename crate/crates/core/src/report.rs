//! Itemized pass/fail reports shared by the verifiers.

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Clause {
    pub name: String,
    pub pass: bool,
    pub checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Clause {
    pub fn new(name: impl Into<String>) -> Self {
        Clause { name: name.into(), pass: true, checked: 0, witness: None }
    }

    /// Count one check; the first failure is kept as the witness.
    pub fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) -> bool {
        self.checked += 1;
        if !ok && self.pass {
            self.pass = false;
            self.witness = Some(witness());
        }
        ok
    }

    pub fn fail(&mut self, witness: impl Into<String>) {
        self.check(false, || witness.into());
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub subject: String,
    pub clauses: Vec<Clause>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(subject: impl Into<String>) -> Self {
        Report { subject: subject.into(), ..Default::default() }
    }

    pub fn pass(&self) -> bool {
        self.clauses.iter().all(|c| c.pass)
    }

    pub fn push(&mut self, c: Clause) {
        self.clauses.push(c);
    }

    pub fn clause(&self, name: &str) -> Option<&Clause> {
        self.clauses.iter().find(|c| c.name == name)
    }

    /// Names of failing clauses.
    pub fn failures(&self) -> Vec<&str> {
        self.clauses.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect()
    }

    /// Absorb another report's clauses under a prefix.
    pub fn merge(&mut self, prefix: &str, other: Report) {
        for mut c in other.clauses {
            c.name = format!("{}.{}", prefix, c.name);
            self.clauses.push(c);
        }
        self.notes.extend(other.notes);
    }
}
