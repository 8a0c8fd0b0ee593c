//! Scenario runner behind the `krotor` binary.

pub mod config;
pub mod error;
pub mod output;
pub mod run;

use std::collections::{BTreeMap, HashMap};
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use config::{validate, ScenarioConfig};
use error::CliError;
use output::{resolve_output, write_atomic, write_envelope, Metadata, ResultEnvelope};

pub const TOOL: &str = "krotor";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Validates and runs one scenario without touching the filesystem.
pub fn run(cfg: &ScenarioConfig, out_dir: &Path) -> Result<(PathBuf, ResultEnvelope), CliError> {
    let start = Instant::now();
    let scenario = validate(cfg)?;
    let path = resolve_output(cfg, out_dir);
    let table = run::run_scenario(&scenario)?;
    let env = ResultEnvelope {
        metadata: Metadata {
            tool: TOOL.into(),
            version: VERSION.into(),
            runtime_ms: start.elapsed().as_millis(),
            config: scenario.echo(Some(path.clone())),
        },
        columns: table.columns,
        summary: table.summary,
    };
    Ok((path, env))
}

/// Runs one scenario and writes its CSV and sidecar.
pub fn execute(cfg: &ScenarioConfig, out_dir: &Path) -> Result<(PathBuf, ResultEnvelope), CliError> {
    let (path, env) = run(cfg, out_dir)?;
    write_envelope(&env, &path)?;
    Ok((path, env))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    ConfigError,
    NonConvergence,
    IoError,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndexEntry {
    /// 1-based line in the batch file.
    pub line: usize,
    pub command: Option<String>,
    pub output: Option<PathBuf>,
    pub status: Status,
    pub exit_code: i32,
    pub message: Option<String>,
    pub summary: BTreeMap<String, serde_json::Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BatchIndex {
    pub tool: String,
    pub version: String,
    pub scenarios: Vec<IndexEntry>,
}

impl BatchIndex {
    /// 0 when every scenario succeeded, else the largest failure code.
    pub fn exit_code(&self) -> i32 {
        self.scenarios.iter().map(|e| e.exit_code).max().unwrap_or(0)
    }
}

fn failed(line: usize, cfg: Option<&ScenarioConfig>, out: Option<PathBuf>, e: &CliError) -> IndexEntry {
    let code = e.exit_code();
    IndexEntry {
        line,
        command: cfg.map(|c| c.command.name().to_string()),
        output: out,
        status: match code {
            2 => Status::ConfigError,
            3 => Status::NonConvergence,
            _ => Status::IoError,
        },
        exit_code: code,
        message: Some(e.to_string()),
        summary: BTreeMap::new(),
    }
}

/// Runs every scenario of a line-delimited JSON batch file. Blank lines and
/// lines starting with `#` are skipped. Scenarios that share an output path
/// reject the whole batch before anything runs.
pub fn batch(text: &str, out_dir: &Path) -> Result<BatchIndex, CliError> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect();
    let parsed: Vec<(usize, Result<ScenarioConfig, CliError>)> =
        lines.iter().map(|&(i, l)| (i, ScenarioConfig::from_json(l))).collect();
    let mut seen: HashMap<PathBuf, usize> = HashMap::new();
    for (line, cfg) in &parsed {
        if let Ok(cfg) = cfg {
            let path = resolve_output(cfg, out_dir);
            if let Some(first) = seen.insert(path.clone(), *line) {
                return Err(CliError::config(
                    "output_path",
                    format!("lines {first} and {line} both write {}", path.display()),
                ));
            }
        }
    }
    let scenarios = parsed
        .par_iter()
        .map(|(line, cfg)| match cfg {
            Err(e) => failed(*line, None, None, e),
            Ok(cfg) => {
                let out = resolve_output(cfg, out_dir);
                match execute(cfg, out_dir) {
                    Ok((path, env)) => IndexEntry {
                        line: *line,
                        command: Some(cfg.command.name().to_string()),
                        output: Some(path),
                        status: Status::Ok,
                        exit_code: 0,
                        message: None,
                        summary: env.summary,
                    },
                    Err(e) => failed(*line, Some(cfg), Some(out), &e),
                }
            }
        })
        .collect();
    Ok(BatchIndex {
        tool: TOOL.into(),
        version: VERSION.into(),
        scenarios,
    })
}

/// Writes the batch index as pretty JSON.
pub fn write_index(index: &BatchIndex, path: &Path) -> Result<(), CliError> {
    let json = serde_json::to_string_pretty(index).expect("index serializes");
    write_atomic(path, format!("{json}\n").as_bytes())
}
