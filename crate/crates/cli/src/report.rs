//! Command results in text or JSON-lines form.

use serde_json::{json, Map, Value};

pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: Option<String>,
}

pub struct Report {
    pub command: String,
    pub inputs: Map<String, Value>,
    pub result: Value,
    /// Human-readable lines printed before the checks in text mode.
    pub lines: Vec<String>,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            inputs: Map::new(),
            result: Value::Null,
            lines: Vec::new(),
            checks: Vec::new(),
        }
    }

    pub fn input(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.inputs.insert(key.to_string(), value.into());
        self
    }

    /// Sets a single-string result that is also the first text line.
    pub fn text_result(mut self, text: String) -> Self {
        self.lines.push(text.clone());
        self.result = Value::String(text);
        self
    }

    pub fn check(&mut self, name: &str, passed: bool) {
        self.checks.push(Check {
            name: name.to_string(),
            passed,
            detail: None,
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| {
                let mut o = json!({ "name": c.name, "passed": c.passed });
                if let Some(d) = &c.detail {
                    o["detail"] = Value::String(d.clone());
                }
                o
            })
            .collect();
        json!({
            "command": self.command,
            "inputs": self.inputs,
            "result": self.result,
            "checks": checks,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out: Vec<String> = self.lines.clone();
        for c in &self.checks {
            match &c.detail {
                Some(d) => out.push(format!("{}: {} ({d})", c.name, c.passed)),
                None => out.push(format!("{}: {}", c.name, c.passed)),
            }
        }
        out.join("\n")
    }
}
