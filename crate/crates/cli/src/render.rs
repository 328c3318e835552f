//! Plain-text rendering of a report document.

use std::fmt::Write;

use serde_json::Value;

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(a) => a.iter().all(|x| !x.is_object() && (!x.is_array() || is_flat(x))),
        Value::Object(_) => false,
        _ => true,
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::Array(a) => format!("[{}]", a.iter().map(compact).collect::<Vec<_>>().join(",")),
        other => scalar(other),
    }
}

fn walk(out: &mut String, key: &str, v: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    if is_flat(v) {
        let _ = writeln!(out, "{pad}{key}: {}", compact(v));
        return;
    }
    let _ = writeln!(out, "{pad}{key}:");
    match v {
        Value::Object(m) => m.iter().for_each(|(k, x)| walk(out, k, x, indent + 1)),
        Value::Array(a) => a.iter().enumerate().for_each(|(k, x)| walk(out, &format!("[{k}]"), x, indent + 1)),
        _ => unreachable!(),
    }
}

pub fn render_text(doc: &Value) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "nichols {} on {} (engine {}, max degree {})",
        scalar(&doc["command"]),
        scalar(&doc["input"]),
        scalar(&doc["engine"]),
        scalar(&doc["max_degree"])
    );
    if let Value::Object(sections) = &doc["sections"] {
        for (name, body) in sections {
            let _ = writeln!(out, "\n== {name}");
            if let Some(s) = body.get("summary") {
                let _ = writeln!(out, "{}", scalar(s));
            }
            if let Value::Object(m) = body {
                m.iter().filter(|(k, _)| *k != "summary").for_each(|(k, x)| walk(&mut out, k, x, 0));
            } else {
                walk(&mut out, name, body, 0);
            }
        }
    }
    if let Value::Array(vs) = &doc["verdicts"] {
        if !vs.is_empty() {
            let _ = writeln!(out, "\n== verdicts");
        }
        for v in vs {
            let mark = if v["passed"] == Value::Bool(true) { "PASS" } else { "FAIL" };
            let inst = scalar(&v["instance"]);
            let mut line = format!("{mark} {}/{}", scalar(&v["section"]), scalar(&v["name"]));
            if !inst.is_empty() {
                let _ = write!(line, " {inst}");
            }
            if let Some(d) = v.get("detail") {
                let _ = write!(line, ": {}", scalar(d));
            }
            let _ = writeln!(out, "{line}");
        }
    }
    if let Value::Array(ns) = &doc["notes"] {
        for n in ns {
            let _ = writeln!(out, "note: {}", scalar(n));
        }
    }
    if let Value::String(t) = &doc["truncated"] {
        let _ = writeln!(out, "{t}");
    }
    let _ = writeln!(out, "{}", if doc["passed"] == Value::Bool(true) { "result: pass" } else { "result: fail" });
    out
}
