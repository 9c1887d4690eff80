//! The output of every command, rendered either as a human-readable table or
//! as JSON with the fixed top-level keys
//! `command`, `params`, `results`, `provenance`, `hypotheses`.

use std::collections::BTreeSet;
use std::fmt::Display;

use serde_json::{json, Map, Value};

/// One named result with the operation that produced it.
#[derive(Debug, Clone)]
pub struct Entry {
    pub key: String,
    pub value: Value,
    pub provenance: String,
}

/// A hypothesis on the algebra that the caller may assert.
#[derive(Debug, Clone)]
pub struct Hypothesis {
    pub name: String,
    pub statement: String,
    pub asserted: bool,
}

#[derive(Debug, Clone)]
pub struct Report {
    pub command: &'static str,
    pub params: Vec<(String, String)>,
    pub entries: Vec<Entry>,
    pub hypotheses: Vec<Hypothesis>,
    /// Lines of the human-readable rendering, after the header.
    pub lines: Vec<String>,
    /// Set when a verification inside the command failed.
    pub verification_failed: bool,
}

/// Decimal string for any number; big integers exceed what JSON readers
/// represent exactly.
pub fn num(v: impl Display) -> Value {
    Value::String(v.to_string())
}

pub fn nums<T: Display>(values: impl IntoIterator<Item = T>) -> Value {
    Value::Array(values.into_iter().map(num).collect())
}

impl Report {
    pub fn new(command: &'static str) -> Self {
        Self {
            command,
            params: Vec::new(),
            entries: Vec::new(),
            hypotheses: Vec::new(),
            lines: Vec::new(),
            verification_failed: false,
        }
    }

    pub fn param(&mut self, key: &str, value: impl Display) -> &mut Self {
        self.params.push((key.to_string(), value.to_string()));
        self
    }

    pub fn entry(&mut self, key: &str, value: Value, provenance: impl Into<String>) -> &mut Self {
        self.entries.push(Entry {
            key: key.to_string(),
            value,
            provenance: provenance.into(),
        });
        self
    }

    pub fn line(&mut self, text: impl Into<String>) -> &mut Self {
        self.lines.push(text.into());
        self
    }

    pub fn hypothesis(&mut self, name: &str, statement: &str, asserted: bool) -> &mut Self {
        self.hypotheses.push(Hypothesis {
            name: name.to_string(),
            statement: statement.to_string(),
            asserted,
        });
        self
    }

    pub fn to_json(&self) -> Value {
        let params: Map<String, Value> = self
            .params
            .iter()
            .map(|(k, v)| (k.clone(), Value::String(v.clone())))
            .collect();
        let results: Map<String, Value> = self
            .entries
            .iter()
            .map(|e| {
                (
                    e.key.clone(),
                    json!({ "value": e.value, "provenance": e.provenance }),
                )
            })
            .collect();
        let provenance: BTreeSet<&str> = self.entries.iter().map(|e| e.provenance.as_str()).collect();
        let hypotheses: Vec<Value> = self
            .hypotheses
            .iter()
            .map(|h| json!({ "name": h.name, "statement": h.statement, "asserted": h.asserted }))
            .collect();
        json!({
            "command": self.command,
            "params": params,
            "results": results,
            "provenance": provenance.into_iter().collect::<Vec<_>>(),
            "hypotheses": hypotheses,
        })
    }

    pub fn to_table(&self) -> String {
        let mut out = format!("command: {}\n", self.command);
        if !self.params.is_empty() {
            let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            out.push_str(&format!("params: {}\n", params.join(" ")));
        }
        for h in &self.hypotheses {
            let status = if h.asserted { "asserted" } else { "NOT asserted" };
            out.push_str(&format!("hypothesis {} ({}): {status}\n", h.name, h.statement));
        }
        for line in &self.lines {
            out.push_str(line);
            out.push('\n');
        }
        let provenance: BTreeSet<&str> = self.entries.iter().map(|e| e.provenance.as_str()).collect();
        if !provenance.is_empty() {
            let labels: Vec<&str> = provenance.into_iter().collect();
            out.push_str(&format!("provenance: {}\n", labels.join("; ")));
        }
        out
    }
}
