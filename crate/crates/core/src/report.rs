//! Versioned command reports, rendered as JSON or Markdown from one value.

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool_version: String,
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    /// Every phase in the results is exact.
    pub exact: bool,
    /// Every checked invariant held.
    pub passed: bool,
}

impl Report {
    pub fn new(command: &str, inputs: Value, results: Value, passed: bool) -> Self {
        let exact = !contains_inexact_phase(&results);
        Self {
            schema_version: SCHEMA_VERSION,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            inputs,
            results,
            exact,
            passed,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_markdown(&self) -> String {
        let mut out = format!("# permsym {}\n\n", self.command);
        out.push_str(&format!(
            "- schema_version: {}\n- tool_version: {}\n- exact: {}\n- passed: {}\n",
            self.schema_version, self.tool_version, self.exact, self.passed
        ));
        section(&mut out, "Inputs", &self.inputs);
        section(&mut out, "Results", &self.results);
        out
    }
}

fn contains_inexact_phase(v: &Value) -> bool {
    match v {
        Value::Object(map) => {
            (map.contains_key("half_turns") && map.get("exact") == Some(&Value::Bool(false)))
                || map.values().any(contains_inexact_phase)
        }
        Value::Array(items) => items.iter().any(contains_inexact_phase),
        _ => false,
    }
}

fn section(out: &mut String, title: &str, v: &Value) {
    out.push_str(&format!("\n## {title}\n\n"));
    match v {
        Value::Object(map) => {
            for (k, item) in map {
                render(out, k, item, 0);
            }
        }
        other => render(out, "value", other, 0),
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("null".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Object(map) if is_phase(map) => Some(map["value"].as_str().unwrap_or_default().to_string()),
        Value::Array(items)
            if items.iter().all(|i| matches!(i, Value::Number(_) | Value::String(_) | Value::Bool(_))) =>
        {
            Some(format!("[{}]", items.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

fn is_phase(map: &serde_json::Map<String, Value>) -> bool {
    map.contains_key("half_turns") && map.contains_key("value")
}

/// Rows of flat objects sharing one key set become a table.
fn table(items: &[Value]) -> Option<String> {
    let first = items.first()?.as_object()?;
    let keys: Vec<&String> = first.keys().collect();
    let mut rows = Vec::new();
    for item in items {
        let obj = item.as_object()?;
        if obj.keys().collect::<Vec<_>>() != keys {
            return None;
        }
        rows.push(keys.iter().map(|k| scalar(&obj[k.as_str()])).collect::<Option<Vec<_>>>()?);
    }
    let mut out = format!(
        "| {} |\n|{}\n",
        keys.iter().map(|k| k.as_str()).collect::<Vec<_>>().join(" | "),
        "---|".repeat(keys.len())
    );
    for r in rows {
        out.push_str(&format!("| {} |\n", r.join(" | ")));
    }
    Some(out)
}

fn render(out: &mut String, key: &str, v: &Value, depth: usize) {
    let indent = "  ".repeat(depth);
    if let Some(s) = scalar(v) {
        out.push_str(&format!("{indent}- {key}: {s}\n"));
        return;
    }
    match v {
        Value::Object(map) => {
            out.push_str(&format!("{indent}- {key}:\n"));
            for (k, item) in map {
                render(out, k, item, depth + 1);
            }
        }
        Value::Array(items) => {
            if let Some(t) = table(items) {
                out.push_str(&format!("{indent}- {key}:\n\n{t}\n"));
            } else {
                out.push_str(&format!("{indent}- {key}:\n"));
                for (i, item) in items.iter().enumerate() {
                    render(out, &i.to_string(), item, depth + 1);
                }
            }
        }
        _ => unreachable!(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactphase::{Phase, Rational};
    use serde_json::json;

    #[test]
    fn markdown_tables_and_phases() {
        let results = json!({
            "singles": [
                {"pair": ["a", "b"], "phase": Phase::minus_one()},
                {"pair": ["a", "c"], "phase": Phase::from_half_turns(Rational::new(1, 2))}
            ],
            "count": 2
        });
        let r = Report::new("csp", json!({}), results, true);
        assert!(r.exact);
        let md = r.to_markdown();
        assert!(md.contains("| pair | phase |"), "{md}");
        assert!(md.contains("| [a, b] | -1 |"));
        assert!(md.contains("e^{iπ·1/2}"));
        let inexact = Report::new("x", json!({}), json!({"p": Phase::from_radians_inexact(0.3)}), true);
        assert!(!inexact.exact);
    }
}
