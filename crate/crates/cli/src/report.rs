use std::fmt;

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Error => 2,
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub status: Status,
    pub payload: Value,
    pub diagnostics: Vec<String>,
    /// Graphviz rendering for commands that produce a graph.
    #[serde(skip)]
    pub dot: Option<String>,
}

impl Report {
    pub fn error(command: &str, message: impl Into<String>) -> Self {
        Report { command: command.to_string(), status: Status::Error, payload: Value::Null, diagnostics: vec![message.into()], dot: None }
    }

    /// JSON value with keys in sorted order.
    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("command: {}\nstatus: {}\n", self.command, self.status);
        flatten(&self.payload, "", &mut out);
        for d in &self.diagnostics {
            out.push_str(&format!("diagnostic: {d}\n"));
        }
        out
    }
}

fn flatten(v: &Value, prefix: &str, out: &mut String) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(x, &key, out);
            }
        }
        Value::Null if prefix.is_empty() => {}
        Value::String(s) => out.push_str(&format!("{prefix} = {s}\n")),
        other => out.push_str(&format!("{prefix} = {other}\n")),
    }
}

/// Worst status over a batch; an empty batch passes.
pub fn overall(reports: &[Report]) -> Status {
    reports.iter().map(|r| r.status).max().unwrap_or(Status::Pass)
}
