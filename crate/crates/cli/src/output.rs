use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde_json::{json, Map, Value};

use crate::params::{Format, Params};

pub const SCHEMA_VERSION: u32 = 1;

/// Result of one command: a summary for the terminal, a data table and metadata.
#[derive(Debug, Clone, Default)]
pub struct Output {
    pub summary: String,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    /// Extra metadata: effective defaults, seed, truncation parameters, verdicts.
    pub meta: Map<String, Value>,
    /// Plain `re im` lines, for `--format txt`.
    pub text: Option<String>,
}

impl Output {
    pub fn meta(&mut self, key: &str, value: impl Into<Value>) {
        self.meta.insert(key.to_string(), value.into());
    }

    pub fn to_csv(&self) -> Result<Vec<u8>> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row)?;
        }
        Ok(w.into_inner()?)
    }

    pub fn to_json(&self) -> Result<Vec<u8>> {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .header
                    .iter()
                    .zip(row)
                    .map(|(k, v)| (k.to_string(), cell(v)))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        let mut bytes = serde_json::to_vec_pretty(&rows)?;
        bytes.push(b'\n');
        Ok(bytes)
    }

    pub fn data(&self, format: Format) -> Result<Vec<u8>> {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
            Format::Txt => match &self.text {
                Some(t) => Ok(t.clone().into_bytes()),
                None => bail!("--format txt is only available for generate"),
            },
        }
    }
}

/// Numbers stay numbers in JSON output; everything else is a string.
fn cell(v: &str) -> Value {
    match v.parse::<f64>() {
        Ok(x) if x.is_finite() => json!(x),
        _ => Value::String(v.to_string()),
    }
}

/// `<out>.meta.json`
pub fn meta_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".meta.json");
    PathBuf::from(name)
}

/// Writes the data file and its metadata next to it.
pub fn write_files(out: &Path, command: &str, params: &Params, output: &Output) -> Result<()> {
    let format = params.format.unwrap_or(Format::Csv);
    let data = output.data(format)?;
    fs::write(out, data).with_context(|| format!("writing {}", out.display()))?;
    let meta = json!({
        "schema_version": SCHEMA_VERSION,
        "tool": "blaschke-lab",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "config": params,
        "format": format,
        "columns": output.header,
        "details": output.meta,
    });
    let mut bytes = serde_json::to_vec_pretty(&meta)?;
    bytes.push(b'\n');
    let path = meta_path(out);
    fs::write(&path, bytes).with_context(|| format!("writing {}", path.display()))
}
