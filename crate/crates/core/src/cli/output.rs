//! CSV and JSON emission. Floats are written as `{:.16e}` (17 significant
//! digits) so identical runs give byte-identical files.

use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{json, Map, Value};

use super::config::{OutputFormat, RunConfig};
use crate::error::{Error, Result};

/// Named numeric columns of equal length.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub columns: Vec<(String, Vec<f64>)>,
}

impl Table {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, name: &str, values: Vec<f64>) -> Self {
        if let Some((_, first)) = self.columns.first() {
            assert_eq!(first.len(), values.len(), "column `{name}` has a different length");
        }
        self.columns.push((name.to_string(), values));
        self
    }

    pub fn rows(&self) -> usize {
        self.columns.first().map_or(0, |(_, v)| v.len())
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let header: Vec<&str> = self.columns.iter().map(|(n, _)| n.as_str()).collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for i in 0..self.rows() {
            let row: Vec<String> = self.columns.iter().map(|(_, v)| format_float(v[i])).collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    fn to_json(&self) -> Value {
        let mut m = Map::new();
        for (name, values) in &self.columns {
            m.insert(name.clone(), json!(values));
        }
        Value::Object(m)
    }
}

pub fn format_float(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else {
        format!("{v:.16e}")
    }
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    let io = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(io)?;
    }
    let mut f = std::fs::File::create(path).map_err(io)?;
    f.write_all(contents.as_bytes()).map_err(io)
}

fn with_extension(stem: &Path, ext: &str) -> PathBuf {
    let mut s = stem.as_os_str().to_owned();
    s.push(".");
    s.push(ext);
    PathBuf::from(s)
}

/// `stem` with `_suffix` appended to the file name.
pub fn suffixed(stem: &Path, suffix: &str) -> PathBuf {
    let mut s = stem.as_os_str().to_owned();
    s.push("_");
    s.push(suffix);
    PathBuf::from(s)
}

/// Writes one data product: `stem.csv` plus `stem.json` (CSV format) or a
/// single `stem.json` holding the data too. The resolved config is always
/// embedded in the JSON. Returns the paths written.
pub fn emit(
    stem: &Path,
    command: &str,
    config: &RunConfig,
    metadata: impl Serialize,
    table: Option<&Table>,
) -> Result<Vec<PathBuf>> {
    let mut sidecar = Map::new();
    sidecar.insert("command".into(), json!(command));
    sidecar.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    sidecar.insert("config".into(), serde_json::to_value(config).expect("config serializes"));
    match serde_json::to_value(metadata).expect("metadata serializes") {
        Value::Object(m) => sidecar.extend(m),
        Value::Null => {}
        other => {
            sidecar.insert("result".into(), other);
        }
    }
    let mut written = Vec::new();
    if let Some(t) = table {
        match config.output.format {
            OutputFormat::Csv => {
                let path = with_extension(stem, "csv");
                write_file(&path, &t.to_csv())?;
                sidecar.insert(
                    "data_file".into(),
                    json!(path.file_name().map(|n| n.to_string_lossy().into_owned())),
                );
                written.push(path);
            }
            OutputFormat::Json => {
                sidecar.insert("data".into(), t.to_json());
            }
        }
    }
    let path = with_extension(stem, "json");
    let mut text = serde_json::to_string_pretty(&Value::Object(sidecar)).expect("json");
    text.push('\n');
    write_file(&path, &text)?;
    written.push(path);
    Ok(written)
}
