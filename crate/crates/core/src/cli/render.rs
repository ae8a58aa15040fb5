use serde::{Deserialize, Serialize};
use serde_json::Value;

/// The JSON report shared by every subcommand.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Envelope {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub input: Value,
    pub result: Value,
    pub certificates: Value,
    pub notes: Vec<String>,
    /// Wall-clock time; the only field allowed to differ between runs.
    pub timing_us: u64,
}

impl Envelope {
    pub fn new(command: &str, input: Value, result: Value, certificates: Value, notes: Vec<String>, timing_us: u64) -> Self {
        Envelope {
            tool: "frobkit".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            input,
            result,
            certificates,
            notes,
            timing_us,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("envelope serializes")
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
            Some(format!("[{}]", a.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")))
        }
        Value::Object(o) if o.len() == 2 && o.contains_key("num") && o.contains_key("den") => {
            Some(format!("{}/{}", o["num"], o["den"]))
        }
        _ => None,
    }
}

fn render_value(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(o) => {
            for (k, x) in o {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_value(x, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}[{i}]\n"));
                        render_value(x, indent + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}

/// Text rendering of an envelope (no timing, so text is reproducible too).
pub fn render_text(env: &Envelope) -> String {
    let mut out = format!("{} {} {}\n", env.tool, env.version, env.command);
    for (title, v) in [("input", &env.input), ("result", &env.result)] {
        out.push_str(&format!("{title}:\n"));
        render_value(v, 1, &mut out);
    }
    if !env.certificates.is_null() {
        out.push_str("certificates:\n");
        render_value(&env.certificates, 1, &mut out);
    }
    for n in &env.notes {
        out.push_str(&format!("note: {n}\n"));
    }
    out.trim_end().to_string()
}
