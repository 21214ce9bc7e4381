use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// A measured quantity that is reported but not asserted.
    Info,
}

impl Verdict {
    fn label(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "FAIL",
            Verdict::Info => "info",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Claim {
    pub claim: String,
    pub bound: Value,
    pub measured: Value,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub name: String,
    pub parameters: Map<String, Value>,
    pub claims: Vec<Claim>,
    pub artifacts: Map<String, Value>,
    pub table_digest: Option<String>,
}

impl AuditReport {
    pub fn new(name: &str) -> Self {
        Self {
            name: name.to_string(),
            parameters: Map::new(),
            claims: Vec::new(),
            artifacts: Map::new(),
            table_digest: None,
        }
    }

    pub fn param(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.parameters.insert(key.to_string(), v.into());
        self
    }

    pub fn artifact(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.artifacts.insert(key.to_string(), v.into());
        self
    }

    pub fn digest(&mut self, digest: String) -> &mut Self {
        self.table_digest = Some(digest);
        self
    }

    pub fn check(
        &mut self,
        claim: impl Into<String>,
        bound: impl Into<Value>,
        measured: impl Into<Value>,
        pass: bool,
    ) -> &mut Self {
        self.claims.push(Claim {
            claim: claim.into(),
            bound: bound.into(),
            measured: measured.into(),
            verdict: if pass { Verdict::Pass } else { Verdict::Fail },
        });
        self
    }

    pub fn info(&mut self, claim: impl Into<String>, measured: impl Into<Value>) -> &mut Self {
        self.claims.push(Claim {
            claim: claim.into(),
            bound: Value::Null,
            measured: measured.into(),
            verdict: Verdict::Info,
        });
        self
    }

    /// No asserted claim failed.
    pub fn passed(&self) -> bool {
        self.claims.iter().all(|c| c.verdict != Verdict::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Claim> {
        self.claims.iter().filter(|c| c.verdict == Verdict::Fail)
    }

    /// A plain-text table: claim | bound | measured | verdict.
    pub fn render(&self) -> String {
        let cell = |v: &Value| match v {
            Value::Null => "-".to_string(),
            Value::String(s) => s.clone(),
            other => other.to_string(),
        };
        let rows: Vec<[String; 4]> = self
            .claims
            .iter()
            .map(|c| {
                [
                    c.claim.clone(),
                    cell(&c.bound),
                    cell(&c.measured),
                    c.verdict.label().to_string(),
                ]
            })
            .collect();
        let head = ["claim", "bound", "measured", "verdict"];
        let mut widths = head.map(|h| h.chars().count());
        for r in &rows {
            for (w, c) in widths.iter_mut().zip(r) {
                *w = (*w).max(c.chars().count());
            }
        }
        let line = |cells: [&str; 4]| {
            let mut s = String::new();
            for (i, (c, w)) in cells.iter().zip(widths).enumerate() {
                if i > 0 {
                    s.push_str(" | ");
                }
                let pad = w - c.chars().count();
                s.push_str(c);
                s.extend(std::iter::repeat_n(' ', pad));
            }
            s.trim_end().to_string()
        };
        let mut out = String::new();
        let _ = writeln!(out, "audit: {}", self.name);
        if !self.parameters.is_empty() {
            let ps: Vec<String> = self
                .parameters
                .iter()
                .map(|(k, v)| format!("{k}={}", cell(v)))
                .collect();
            let _ = writeln!(out, "parameters: {}", ps.join(" "));
        }
        if let Some(d) = &self.table_digest {
            let _ = writeln!(out, "table digest: {d}");
        }
        let _ = writeln!(out, "{}", line(head));
        let sep: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
        let _ = writeln!(out, "{}", sep.join("-+-"));
        for r in &rows {
            let _ = writeln!(out, "{}", line([&r[0], &r[1], &r[2], &r[3]]));
        }
        let _ = writeln!(
            out,
            "result: {}",
            if self.passed() { "PASS" } else { "FAIL" }
        );
        out
    }
}
