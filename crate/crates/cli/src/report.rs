use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

/// One invocation's output. `counts` is always derived from `items`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub version: String,
    pub query: Query,
    pub counts: Map<String, Value>,
    pub items: Vec<Value>,
    pub timing: Option<Timing>,
    /// Command-specific summary fields such as `gauge_type`.
    #[serde(flatten)]
    pub extra: Map<String, Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Query {
    pub command: String,
    pub args: Map<String, Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub seconds: f64,
}

impl Report {
    pub fn new(command: &str, args: Map<String, Value>, items: Vec<Value>) -> Report {
        let mut counts = Map::new();
        counts.insert("items".into(), items.len().into());
        Report {
            version: env!("CARGO_PKG_VERSION").to_string(),
            query: Query {
                command: command.to_string(),
                args,
            },
            counts,
            items,
            timing: None,
            extra: Map::new(),
        }
    }

    /// Adds `count_<key>` entries tallying the values of `field` over the items.
    pub fn tally(mut self, field: &str) -> Report {
        let mut tally: std::collections::BTreeMap<String, usize> = Default::default();
        for item in &self.items {
            if let Some(v) = item.get(field) {
                let key = match v {
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                *tally.entry(key).or_default() += 1;
            }
        }
        let obj: Map<String, Value> = tally.into_iter().map(|(k, n)| (k, n.into())).collect();
        self.counts.insert(format!("by_{field}"), Value::Object(obj));
        self
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Report {
        self.extra.insert(key.to_string(), value.into());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Plain-text rendering; one item per line.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let args: Vec<String> = self.query.args.iter().map(|(k, v)| format!("{k}={}", plain(v))).collect();
        let _ = writeln!(out, "# {} {}", self.query.command, args.join(" "));
        for (k, v) in &self.extra {
            let _ = writeln!(out, "{k}: {}", plain(v));
        }
        for (k, v) in &self.counts {
            let _ = writeln!(out, "{k}: {}", plain(v));
        }
        for item in &self.items {
            let _ = writeln!(out, "  {}", plain(item));
        }
        if let Some(t) = &self.timing {
            let _ = writeln!(out, "time: {:.3}s", t.seconds);
        }
        out
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(xs) => format!("[{}]", xs.iter().map(plain).collect::<Vec<_>>().join(", ")),
        Value::Object(m) => m
            .iter()
            .map(|(k, v)| format!("{k}={}", plain(v)))
            .collect::<Vec<_>>()
            .join("  "),
        other => other.to_string(),
    }
}
