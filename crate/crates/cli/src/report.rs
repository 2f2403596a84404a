use serde::Serialize;
use serde_json::{json, Value};

use crate::config::RunConfig;

/// Outcome of one command: text lines for the terminal, JSON for files.
#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub passed: bool,
    pub config: Value,
    #[serde(skip)]
    pub lines: Vec<String>,
    pub data: Value,
}

impl Report {
    pub fn new(command: impl Into<String>, cfg: &RunConfig) -> Self {
        Report {
            command: command.into(),
            passed: true,
            config: serde_json::to_value(cfg).expect("serializable"),
            lines: Vec::new(),
            data: json!({}),
        }
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    pub fn set(&mut self, key: &str, v: impl Serialize) {
        self.data[key] = serde_json::to_value(v).expect("serializable");
    }

    /// Records one pass/fail check.
    pub fn check(&mut self, name: impl Into<String>, ok: bool, detail: impl Into<String>) {
        let (name, detail) = (name.into(), detail.into());
        self.passed &= ok;
        let tag = if ok { "PASS" } else { "FAIL" };
        if detail.is_empty() {
            self.lines.push(format!("{tag} {name}"));
        } else {
            self.lines.push(format!("{tag} {name}: {detail}"));
        }
        if !self.data["checks"].is_array() {
            self.data["checks"] = json!([]);
        }
        if let Value::Array(a) = &mut self.data["checks"] {
            a.push(json!({"name": name, "passed": ok, "detail": detail}));
        }
    }

    pub fn text(&self) -> String {
        let mut out = self.lines.join("\n");
        if !out.is_empty() {
            out.push('\n');
        }
        out.push_str(&format!("{}: {}\n", self.command, if self.passed { "pass" } else { "fail" }));
        out
    }

    pub fn json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }
}
