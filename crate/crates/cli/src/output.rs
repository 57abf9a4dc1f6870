//! CSV and manifest writing.
//!
//! Numbers are written in Rust's shortest round-trip form, so every value
//! parses back to the same `f64` and re-emitting gives the same bytes.
//! Missing values are empty fields, never `NaN`.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Serialize;
use vlevel_core::SystemParams;

pub fn fmt_num(v: f64) -> String {
    if v.is_finite() {
        format!("{v:?}")
    } else {
        String::new()
    }
}

pub fn fmt_opt(v: Option<f64>) -> String {
    v.map(fmt_num).unwrap_or_default()
}

/// An in-memory table, written in one go.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Table { header: header.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> Result<Vec<u8>> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row)?;
        }
        Ok(w.into_inner().map_err(|e| e.into_error())?)
    }
}

/// Parse a CSV written by this tool and write it again, normalizing integer
/// fields through `i64` and other numeric fields through `f64`.
pub fn reemit_csv(bytes: &[u8]) -> Result<Vec<u8>> {
    let mut r = csv::ReaderBuilder::new().has_headers(false).from_reader(bytes);
    let mut w = csv::Writer::from_writer(Vec::new());
    for (i, rec) in r.records().enumerate() {
        let rec = rec?;
        if i == 0 {
            w.write_record(&rec)?;
            continue;
        }
        let fields: Vec<String> = rec
            .iter()
            .map(|f| {
                if let Ok(i) = f.parse::<i64>() {
                    i.to_string()
                } else if let Ok(v) = f.parse::<f64>() {
                    fmt_num(v)
                } else {
                    f.to_string()
                }
            })
            .collect();
        w.write_record(&fields)?;
    }
    Ok(w.into_inner().map_err(|e| e.into_error())?)
}

#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub resolved_params: SystemParams,
    pub output_paths: Vec<PathBuf>,
    pub tool_version: String,
    pub timestamp: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub figure: Option<String>,
    pub backend: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

/// RFC 3339 UTC time, taken from `SOURCE_DATE_EPOCH` when that is set.
pub fn timestamp() -> Result<String> {
    let when = match std::env::var("SOURCE_DATE_EPOCH") {
        Ok(s) => {
            let secs: i64 = s
                .trim()
                .parse()
                .with_context(|| format!("SOURCE_DATE_EPOCH is not an integer: {s:?}"))?;
            chrono::DateTime::from_timestamp(secs, 0)
                .with_context(|| format!("SOURCE_DATE_EPOCH out of range: {secs}"))?
        }
        Err(_) => chrono::Utc::now(),
    };
    Ok(when.to_rfc3339_opts(chrono::SecondsFormat::Secs, true))
}

/// Collects files as they are written so the manifest lists exactly those.
#[derive(Debug, Default)]
pub struct Outputs {
    pub paths: Vec<PathBuf>,
}

impl Outputs {
    pub fn write(&mut self, path: &Path, bytes: &[u8]) -> Result<()> {
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        }
        fs::write(path, bytes).with_context(|| format!("writing {}", path.display()))?;
        self.paths.push(path.to_path_buf());
        Ok(())
    }

    pub fn write_table(&mut self, path: &Path, table: &Table) -> Result<()> {
        self.write(path, &table.to_csv()?)
    }
}

pub fn write_manifest(path: &Path, manifest: &RunManifest) -> Result<()> {
    let mut text = serde_json::to_string_pretty(manifest)?;
    text.push('\n');
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

/// `dir/stem` of `out` without its extension.
pub fn stem_of(out: &Path) -> PathBuf {
    out.with_extension("")
}

/// `stem + suffix + ext`, e.g. `fig6` + `_r2_2.43` + `.csv`.
pub fn sibling(stem: &Path, suffix: &str, ext: &str) -> PathBuf {
    let mut s = stem.as_os_str().to_os_string();
    s.push(suffix);
    s.push(".");
    s.push(ext);
    PathBuf::from(s)
}

/// File-name-safe form of a series label such as `omega_c=1.7`.
pub fn label_slug(label: &str) -> String {
    label
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '.' || c == '-' || c == '_' { c } else { '_' })
        .collect()
}
