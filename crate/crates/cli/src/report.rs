use crate::commands::Outcome;
use crate::Command;
use latres_core::schema::canonical_json;
use latres_core::Result;
use serde_json::{json, Value};

fn name(cmd: &Command) -> String {
    match serde_json::to_value(cmd) {
        Ok(Value::Object(m)) => m.keys().next().cloned().unwrap_or_default(),
        Ok(Value::String(s)) => s,
        _ => String::new(),
    }
}

/// The canonical JSON report. Wall time is left out so reports are byte-stable.
pub fn json(cmd: &Command, out: &Outcome) -> Result<String> {
    canonical_json(&json!({
        "command": cmd,
        "inputs": out.inputs,
        "result": out.result,
        "tool": "latres",
        "version": env!("CARGO_PKG_VERSION"),
    }))
}

pub fn text(cmd: &Command, out: &Outcome) -> String {
    if let Some(raw) = &out.raw {
        return raw.clone();
    }
    let mut s = format!("latres {} {}\n", env!("CARGO_PKG_VERSION"), name(cmd));
    for i in &out.inputs {
        s.push_str(&format!("input {} {} sha256:{}\n", i.role, i.source, i.sha256));
    }
    for l in &out.lines {
        s.push_str(l);
        s.push('\n');
    }
    s
}
