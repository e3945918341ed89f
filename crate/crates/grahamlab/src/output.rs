//! Rendering of command results as JSON, CSV or plain text.

use serde_json::Value;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    #[default]
    Text,
}

/// `(object, index, value)` for every scalar in `value`. The object is the
/// dotted path of the enclosing container, `report` at the top level.
pub fn csv_rows(value: &Value) -> Vec<[String; 3]> {
    fn scalar(v: &Value) -> String {
        match v {
            Value::String(s) => s.clone(),
            Value::Null => String::new(),
            other => other.to_string(),
        }
    }
    fn walk(path: &str, v: &Value, out: &mut Vec<[String; 3]>) {
        let children: Vec<(String, &Value)> = match v {
            Value::Object(map) => map.iter().map(|(k, v)| (k.clone(), v)).collect(),
            Value::Array(items) => items.iter().enumerate().map(|(i, v)| (i.to_string(), v)).collect(),
            _ => return,
        };
        for (key, child) in children {
            match child {
                Value::Object(_) | Value::Array(_) => {
                    let sub = if path == "report" { key } else { format!("{path}.{key}") };
                    walk(&sub, child, out);
                }
                leaf => out.push([path.to_string(), key, scalar(leaf)]),
            }
        }
    }
    let mut out = Vec::new();
    walk("report", value, &mut out);
    out
}

pub fn render_csv(value: &Value) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer
        .write_record(["object", "index", "value"])
        .expect("writing to memory");
    for row in csv_rows(value) {
        writer.write_record(&row).expect("writing to memory");
    }
    String::from_utf8(writer.into_inner().expect("flushing to memory")).expect("utf-8 input")
}

/// The rendered document, newline-terminated.
pub fn render(format: OutputFormat, json: &Value, text: &str) -> String {
    let mut out = match format {
        OutputFormat::Json => serde_json::to_string_pretty(json).expect("serializable"),
        OutputFormat::Csv => render_csv(json),
        OutputFormat::Text => text.to_string(),
    };
    if !out.ends_with('\n') {
        out.push('\n');
    }
    out
}
