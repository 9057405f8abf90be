//! CSV and JSON serialization of tables, written atomically.

use std::io::{self, Write};
use std::path::Path;

use serde_json::{json, Value as Json};

use crate::spec::{OutputFormat, OutputTarget};
use crate::{CliError, Table, Value};

/// 17 significant digits: lossless for `f64`.
fn format_float(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        v.to_string()
    }
}

fn cell_text(v: &Value) -> String {
    match v {
        Value::Int(i) => i.to_string(),
        Value::Float(f) => format_float(*f),
        Value::Text(t) => t.clone(),
        Value::Missing => String::new(),
    }
}

pub fn to_csv(table: &Table) -> Result<Vec<u8>, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let to_io = |e: csv::Error| CliError::Io(io::Error::other(e));
    w.write_record(&table.columns).map_err(to_io)?;
    for row in &table.rows {
        w.write_record(row.iter().map(cell_text)).map_err(to_io)?;
    }
    w.into_inner()
        .map_err(|e| CliError::Io(io::Error::other(e.to_string())))
}

fn cell_json(v: &Value) -> Json {
    match v {
        Value::Int(i) => json!(i),
        Value::Float(f) => json!(f),
        Value::Text(t) => json!(t),
        Value::Missing => Json::Null,
    }
}

/// `{"command": ..., "columns": [...], "rows": [[...], ...]}`.
pub fn to_json(command: &str, table: &Table) -> Vec<u8> {
    let rows: Vec<Json> = table
        .rows
        .iter()
        .map(|r| Json::Array(r.iter().map(cell_json).collect()))
        .collect();
    let doc = json!({
        "command": command,
        "columns": table.columns,
        "rows": rows,
    });
    let mut bytes = serde_json::to_vec_pretty(&doc).expect("JSON values are finite or null");
    bytes.push(b'\n');
    bytes
}

pub fn render(command: &str, table: &Table, format: OutputFormat) -> Result<Vec<u8>, CliError> {
    match format {
        OutputFormat::Csv => to_csv(table),
        OutputFormat::Json => Ok(to_json(command, table)),
    }
}

/// Writes `bytes` to the target. Files are written to a temporary sibling
/// and renamed into place, so a failed run leaves no partial file.
pub fn write_output(target: &OutputTarget, bytes: &[u8]) -> Result<(), CliError> {
    match target {
        OutputTarget::Stdout => {
            let mut out = io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()?;
        }
        OutputTarget::File(path) => {
            let dir = match path.parent() {
                Some(d) if !d.as_os_str().is_empty() => d,
                _ => Path::new("."),
            };
            let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
            tmp.write_all(bytes)?;
            tmp.as_file().sync_all()?;
            tmp.persist(path).map_err(|e| CliError::Io(e.error))?;
        }
    }
    Ok(())
}
