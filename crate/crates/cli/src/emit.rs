use crate::Format;
use anyhow::{Context as _, Result};
use serde_json::Value;
use std::io::Write;
use std::path::Path;

/// A row-oriented view used for CSV output when flattening is not natural.
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

pub struct Outcome {
    pub value: Value,
    /// A stated expectation did not match the computed value.
    pub mismatch: bool,
    pub table: Option<Table>,
}

impl Outcome {
    pub fn plain(value: Value) -> Self {
        Outcome {
            value,
            mismatch: false,
            table: None,
        }
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// Dotted paths to leaves; arrays of scalars stay whole.
pub fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let join = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(m) if !m.is_empty() => {
            for (k, x) in m {
                flatten(&join(k), x, out);
            }
        }
        Value::Array(xs) if xs.iter().any(|x| x.is_object() || x.is_array()) => {
            for (i, x) in xs.iter().enumerate() {
                flatten(&join(&i.to_string()), x, out);
            }
        }
        _ => out.push((prefix.to_string(), scalar(v))),
    }
}

pub fn render(o: &Outcome, format: Format) -> Result<String> {
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(&o.value)? + "\n",
        Format::Markdown => {
            let mut rows = Vec::new();
            flatten("", &o.value, &mut rows);
            let mut s = String::from("| key | value |\n| --- | --- |\n");
            for (k, v) in rows {
                s.push_str(&format!("| {} | {} |\n", k, v.replace('|', "\\|")));
            }
            s
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            match &o.table {
                Some(t) => {
                    w.write_record(&t.headers)?;
                    for r in &t.rows {
                        w.write_record(r)?;
                    }
                }
                None => {
                    let mut rows = Vec::new();
                    flatten("", &o.value, &mut rows);
                    w.write_record(["key", "value"])?;
                    for (k, v) in rows {
                        w.write_record([k, v])?;
                    }
                }
            }
            String::from_utf8(w.into_inner().context("csv buffer")?)?
        }
    })
}

pub fn write(o: &Outcome, format: Format, out: Option<&Path>) -> Result<()> {
    let text = render(o, format)?;
    match out {
        Some(p) => {
            std::fs::write(p, text).with_context(|| format!("cannot write `{}`", p.display()))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}
