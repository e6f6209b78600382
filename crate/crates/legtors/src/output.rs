//! Output formats. JSON objects carry `"schema": 1` and have sorted keys.

use clap::ValueEnum;
use legtors_core::torsion::TorsionResult;
use legtors_core::Rational;
use serde_json::{json, Map, Value};

pub const SCHEMA: u64 = 1;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
    Table,
}

/// What a subcommand produced. `ok` is false when a verification failed.
#[derive(Clone, Debug)]
pub struct Report {
    pub command: &'static str,
    pub value: Map<String, Value>,
    pub text: String,
    pub table: Option<String>,
    pub ok: bool,
}

impl Report {
    pub fn new(command: &'static str, value: Value, text: String) -> Self {
        let value = match value {
            Value::Object(m) => m,
            other => {
                let mut m = Map::new();
                m.insert("result".into(), other);
                m
            }
        };
        Report { command, value, text, table: None, ok: true }
    }

    pub fn with_ok(mut self, ok: bool) -> Self {
        self.ok = ok;
        self
    }

    pub fn with_table(mut self, table: String) -> Self {
        self.table = Some(table);
        self
    }

    pub fn json(&self) -> Value {
        let mut m = self.value.clone();
        m.insert("schema".into(), json!(SCHEMA));
        m.insert("command".into(), json!(self.command));
        m.insert("ok".into(), json!(self.ok));
        Value::Object(m)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json()).expect("serializable");
                s.push('\n');
                s
            }
            Format::Table => self.table.clone().unwrap_or_else(|| self.text.clone()),
            Format::Text => self.text.clone(),
        }
    }
}

pub fn rat(q: &Rational) -> Value {
    Value::String(q.to_string())
}

pub fn torsion(t: &TorsionResult) -> Value {
    match t {
        TorsionResult::OrderTwo => json!({"tag": "order", "n": 2}),
        TorsionResult::Order(n) => json!({"tag": "order", "n": n}),
        TorsionResult::ExceedsBound(m) => json!({"tag": "exceeds_bound", "max": m}),
    }
}

pub fn torsion_text(t: &TorsionResult) -> String {
    match t {
        TorsionResult::OrderTwo => "order 2".into(),
        TorsionResult::Order(n) => format!("order {n}"),
        TorsionResult::ExceedsBound(m) => format!("order > {m}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn envelope() {
        let r = Report::new("demo", json!({"b": 1, "a": 2}), "x".into());
        let s = r.render(Format::Json);
        let v: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["schema"], 1);
        assert!(s.find("\"a\"").unwrap() < s.find("\"b\"").unwrap());
        assert_eq!(r.render(Format::Table), "x");
    }
}
