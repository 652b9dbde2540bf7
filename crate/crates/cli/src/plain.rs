//! Text rendering for `--plain`.

use std::fmt::Write;

use serde_json::Value;

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn interval(v: &Value) -> String {
    format!("[{}, {}]", scalar(&v["lo"]), scalar(&v["hi"]))
}

fn query(v: &Value) -> String {
    format!("{} over {}", scalar(&v["group"]), scalar(&v["field"]))
}

pub fn render(v: &Value) -> String {
    let mut out = String::new();
    if v.get("nodes").is_some() {
        render_bound(v, &mut out);
    } else if v.get("cells").is_some() {
        render_table(v, &mut out);
    } else if let Some(m) = v.as_object() {
        for (k, x) in m {
            if k != "schema" {
                let _ = writeln!(out, "{k}: {}", scalar(x));
            }
        }
    }
    out
}

fn render_bound(v: &Value, out: &mut String) {
    let _ = writeln!(out, "{}: {}", query(&v["query"]), interval(&v["interval"]));
    for (i, node) in v["nodes"].as_array().into_iter().flatten().enumerate() {
        let premises: Vec<String> = node["premises"]
            .as_array()
            .into_iter()
            .flatten()
            .map(|p| format!("{} {}", query(&p["query"]), interval(&p["interval"])))
            .collect();
        let _ = write!(
            out,
            "{i:>4}  {:<14} {} {}",
            scalar(&node["rule"]),
            query(&node["conclusion"]["query"]),
            interval(&node["conclusion"]["interval"])
        );
        if !premises.is_empty() {
            let _ = write!(out, "  <= {}", premises.join("; "));
        }
        let note = scalar(&node["note"]);
        if !note.is_empty() {
            let _ = write!(out, "  ({note})");
        }
        out.push('\n');
    }
}

fn render_table(v: &Value, out: &mut String) {
    let fields: Vec<String> = v["fields"].as_array().into_iter().flatten().map(scalar).collect();
    let groups: Vec<String> = v["groups"].as_array().into_iter().flatten().map(scalar).collect();
    let cells: Vec<String> = v["cells"]
        .as_array()
        .into_iter()
        .flatten()
        .map(|c| match c.get("interval") {
            Some(i) => interval(i),
            None => format!("error: {}", scalar(&c["error"]["kind"])),
        })
        .collect();
    let gw = groups.iter().map(String::len).max().unwrap_or(0).max(5);
    let cw = cells.iter().chain(&fields).map(String::len).max().unwrap_or(0);
    let _ = write!(out, "{:<gw$}", "group");
    for f in &fields {
        let _ = write!(out, "  {f:<cw$}");
    }
    out.push('\n');
    for (r, g) in groups.iter().enumerate() {
        let _ = write!(out, "{g:<gw$}");
        for c in cells.iter().skip(r * fields.len()).take(fields.len()) {
            let _ = write!(out, "  {c:<cw$}");
        }
        out.push('\n');
    }
}
