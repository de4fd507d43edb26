//! Report rendering. JSON output is the serde form of the library report;
//! text output lists the same top-level fields one per line.

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Result of `grank --which`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrankReport {
    pub which: String,
    pub rows: usize,
    pub cols: usize,
    pub grank: usize,
}

/// Result of the `oracle` subcommand.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub check: String,
    pub seed: u64,
    pub trials: u64,
    /// Structural verdict, absent when it is undecidable (SOC only) or the
    /// check is numeric-valued.
    pub structural_verdict: Option<bool>,
    /// Majority of the per-trial verdicts.
    pub numeric_verdict: Option<bool>,
    pub votes_true: u64,
    /// `grank` check only.
    pub structural_value: Option<usize>,
    pub numeric_value: Option<usize>,
    pub agree: Option<bool>,
}

fn is_pattern(map: &serde_json::Map<String, Value>) -> bool {
    map.len() == 3 && map.contains_key("rows") && map.contains_key("cols") && map.contains_key("entries")
}

fn inline(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        Value::Object(map) if is_pattern(map) => {
            let entries: Vec<String> = map["entries"]
                .as_array()
                .into_iter()
                .flatten()
                .map(|e| format!("({},{})", e[0], e[1]))
                .collect();
            format!("{}x{} [{}]", map["rows"], map["cols"], entries.join(" "))
        }
        other => other.to_string(),
    }
}

pub fn text(title: &str, report: &Value) -> String {
    let mut out = format!("{title}\n");
    match report {
        Value::Object(map) => {
            let width = map.keys().map(String::len).max().unwrap_or(0);
            for (k, v) in map {
                out.push_str(&format!("  {k:<width$}  {}\n", inline(v)));
            }
        }
        other => out.push_str(&format!("  {}\n", inline(other))),
    }
    out
}
