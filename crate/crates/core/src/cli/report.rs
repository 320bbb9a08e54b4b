use std::collections::BTreeMap;
use std::fmt::Write;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Info,
}

impl Verdict {
    pub fn of(ok: bool) -> Verdict {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

/// One line of a report. Numbers are exact integers or rationals in text form.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub verdict: Verdict,
    #[serde(default)]
    pub details: String,
    #[serde(default)]
    pub numbers: BTreeMap<String, String>,
}

impl Check {
    pub fn new(name: impl Into<String>, verdict: Verdict) -> Check {
        Check { name: name.into(), verdict, details: String::new(), numbers: BTreeMap::new() }
    }

    pub fn details(mut self, d: impl Into<String>) -> Check {
        self.details = d.into();
        self
    }

    pub fn number(mut self, key: &str, value: impl ToString) -> Check {
        self.numbers.insert(key.to_string(), value.to_string());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub subject: String,
    pub checks: Vec<Check>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Json,
}

impl Report {
    pub fn new(subject: impl Into<String>) -> Report {
        Report { subject: subject.into(), checks: Vec::new() }
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.verdict != Verdict::Fail)
    }

    pub fn emit(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("reports serialize") + "\n",
            Format::Table => self.table(),
        }
    }

    fn table(&self) -> String {
        let mut out = format!("== {}\n", self.subject);
        let width = self.checks.iter().map(|c| c.name.chars().count()).max().unwrap_or(0);
        for c in &self.checks {
            let tag = match c.verdict {
                Verdict::Pass => "PASS",
                Verdict::Fail => "FAIL",
                Verdict::Info => "info",
            };
            let pad = width - c.name.chars().count();
            let _ = write!(out, "{tag}  {}{}", c.name, " ".repeat(pad));
            if !c.details.is_empty() {
                let _ = write!(out, "  {}", c.details);
            }
            out.push('\n');
            if !c.numbers.is_empty() {
                let nums: Vec<String> = c.numbers.iter().map(|(k, v)| format!("{k}={v}")).collect();
                let _ = writeln!(out, "      {}", nums.join(" "));
            }
        }
        out
    }
}
