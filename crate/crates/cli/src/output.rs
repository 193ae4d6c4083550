use std::path::Path;

use anyhow::{Context, Result};
use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

/// A finished command: the full JSON report, a tabular view and the exit code.
pub struct Emitted {
    pub command: String,
    pub json: Value,
    pub csv: String,
    pub exit_code: u8,
}

pub fn csv_table<R: Serialize>(rows: &[R]) -> Result<String> {
    let mut w = csv::Writer::from_writer(vec![]);
    for r in rows {
        w.serialize(r)?;
    }
    Ok(String::from_utf8(w.into_inner().context("flushing csv")?)?)
}

fn flatten_into(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let join = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) => m.iter().for_each(|(k, x)| flatten_into(&join(k), x, out)),
        Value::Array(a) => a.iter().enumerate().for_each(|(i, x)| flatten_into(&join(&i.to_string()), x, out)),
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

/// `path,value` rows for every leaf of a JSON document.
pub fn flatten(v: &Value) -> Result<String> {
    #[derive(Serialize)]
    struct Row {
        path: String,
        value: String,
    }
    let mut leaves = vec![];
    flatten_into("", v, &mut leaves);
    csv_table(&leaves.into_iter().map(|(path, value)| Row { path, value }).collect::<Vec<_>>())
}

pub fn write(e: &Emitted, format: Format, out: Option<&Path>) -> Result<()> {
    let json = serde_json::to_string_pretty(&e.json)? + "\n";
    match out {
        Some(dir) => {
            std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            for (ext, body) in [("json", &json), ("csv", &e.csv)] {
                let path = dir.join(format!("{}.{ext}", e.command));
                std::fs::write(&path, body).with_context(|| format!("writing {}", path.display()))?;
                eprintln!("wrote {}", path.display());
            }
        }
        None => match format {
            Format::Json => print!("{json}"),
            Format::Csv => print!("{}", e.csv),
        },
    }
    Ok(())
}
