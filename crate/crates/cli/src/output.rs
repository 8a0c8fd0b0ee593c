//! CSV tables, JSON sidecars and atomic file replacement.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::config::ScenarioConfig;
use crate::error::CliError;

/// Environment variable naming the default output directory.
pub const OUTPUT_DIR_ENV: &str = "KROTOR_OUTPUT_DIR";

/// One CSV column: integers print without a fraction.
#[derive(Debug, Clone, PartialEq)]
pub enum Column {
    Real(Vec<f64>),
    Integer(Vec<u64>),
}

impl Column {
    pub fn len(&self) -> usize {
        match self {
            Column::Real(v) => v.len(),
            Column::Integer(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn cell(&self, i: usize) -> String {
        match self {
            Column::Real(v) => format_real(v[i]),
            Column::Integer(v) => v[i].to_string(),
        }
    }
}

/// Fifteen significant digits in scientific notation.
pub fn format_real(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format!("{x:.14e}")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub tool: String,
    pub version: String,
    pub runtime_ms: u128,
    pub config: ScenarioConfig,
}

/// Named columns plus summary scalars of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultEnvelope {
    pub metadata: Metadata,
    pub columns: Vec<(String, Column)>,
    pub summary: BTreeMap<String, serde_json::Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sidecar {
    pub metadata: Metadata,
    pub columns: Vec<String>,
    pub rows: usize,
    pub summary: BTreeMap<String, serde_json::Value>,
}

impl ResultEnvelope {
    pub fn rows(&self) -> usize {
        self.columns.first().map_or(0, |(_, c)| c.len())
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let header: Vec<&str> = self.columns.iter().map(|(n, _)| n.as_str()).collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for i in 0..self.rows() {
            let row: Vec<String> = self.columns.iter().map(|(_, c)| c.cell(i)).collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    pub fn sidecar(&self) -> Sidecar {
        Sidecar {
            metadata: self.metadata.clone(),
            columns: self.columns.iter().map(|(n, _)| n.clone()).collect(),
            rows: self.rows(),
            summary: self.summary.clone(),
        }
    }
}

/// Default directory for outputs: the environment variable, else the
/// working directory.
pub fn default_output_dir() -> PathBuf {
    std::env::var_os(OUTPUT_DIR_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("."))
}

/// Relative paths are taken from `dir`; a missing path becomes
/// `<dir>/<command>.csv`.
pub fn resolve_output(cfg: &ScenarioConfig, dir: &Path) -> PathBuf {
    match &cfg.output_path {
        Some(p) if p.is_absolute() => p.clone(),
        Some(p) => dir.join(p),
        None => dir.join(format!("{}.csv", cfg.command.name())),
    }
}

pub fn sidecar_path(csv: &Path) -> PathBuf {
    csv.with_extension("json")
}

/// Writes through a temporary file in the target directory, then renames.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
        _ => PathBuf::from("."),
    };
    std::fs::create_dir_all(&dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(&dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| CliError::Io(e.error))?;
    Ok(())
}

/// Writes the CSV and its sidecar.
pub fn write_envelope(env: &ResultEnvelope, csv: &Path) -> Result<(), CliError> {
    write_atomic(csv, env.to_csv().as_bytes())?;
    let json = serde_json::to_string_pretty(&env.sidecar()).expect("sidecar serializes");
    write_atomic(&sidecar_path(csv), format!("{json}\n").as_bytes())
}
