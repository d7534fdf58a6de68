//! Reports: a header, cardinality tables, named facts, and one line per check.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub depth: usize,
    pub inputs: Vec<String>,
    pub counts: BTreeMap<String, Vec<usize>>,
    pub facts: BTreeMap<String, Value>,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(command: &str, depth: usize, inputs: &[String]) -> Self {
        Report { command: command.into(), depth, inputs: inputs.to_vec(), counts: BTreeMap::new(), facts: BTreeMap::new(), checks: Vec::new() }
    }

    pub fn count(&mut self, name: &str, sizes: Vec<usize>) {
        self.counts.insert(name.into(), sizes);
    }

    pub fn fact(&mut self, name: &str, v: impl Into<Value>) {
        self.facts.insert(name.into(), v.into());
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool, witness: Option<String>) {
        self.checks.push(Check { name: name.into(), passed, witness: if passed { None } else { witness } });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} (depth {})", self.command, self.depth);
        for i in &self.inputs {
            let _ = writeln!(s, "  input {i}");
        }
        for (k, v) in &self.counts {
            let row: Vec<String> = v.iter().map(usize::to_string).collect();
            let _ = writeln!(s, "  {k}: {}", row.join(" "));
        }
        for (k, v) in &self.facts {
            let _ = writeln!(s, "  {k} = {v}");
        }
        for c in &self.checks {
            match &c.witness {
                Some(w) => {
                    let _ = writeln!(s, "FAIL {}: {w}", c.name);
                }
                None => {
                    let _ = writeln!(s, "{} {}", if c.passed { "PASS" } else { "FAIL" }, c.name);
                }
            }
        }
        s
    }
}
