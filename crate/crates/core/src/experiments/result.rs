use serde::Serialize;
use serde_json::Value;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::config::RunConfig;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Series {
    pub name: String,
    pub y: Vec<f64>,
    /// Standard deviation over Monte Carlo trials, when there were several.
    pub std: Option<Vec<f64>>,
}

impl Series {
    pub fn new(name: impl Into<String>, y: Vec<f64>) -> Self {
        Self { name: name.into(), y, std: None }
    }

    pub fn with_std(name: impl Into<String>, y: Vec<f64>, std: Vec<f64>) -> Self {
        Self { name: name.into(), y, std: Some(std) }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Metadata {
    pub experiment: String,
    pub version: String,
    pub seed: u64,
    pub config_hash: String,
    pub config: Value,
    /// Scalar summaries (peaks, fitted slopes, edge values).
    pub summary: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentResult {
    pub x_label: String,
    pub x: Vec<f64>,
    pub series: Vec<Series>,
    pub metadata: Metadata,
}

impl ExperimentResult {
    pub fn new(experiment: &str, config: &RunConfig, x_label: &str, x: Vec<f64>) -> Self {
        Self {
            x_label: x_label.to_string(),
            x,
            series: Vec::new(),
            metadata: Metadata {
                experiment: experiment.to_string(),
                version: concat!("fstm-core ", env!("CARGO_PKG_VERSION")).to_string(),
                seed: config.system.seed,
                config_hash: config.hash(),
                config: config.to_json(),
                summary: BTreeMap::new(),
            },
        }
    }

    pub fn push(&mut self, s: Series) {
        debug_assert_eq!(s.y.len(), self.x.len(), "series {} length", s.name);
        self.series.push(s);
    }

    pub fn note(&mut self, key: &str, value: f64) {
        self.metadata.summary.insert(key.to_string(), value);
    }

    pub fn series(&self, name: &str) -> Option<&Series> {
        self.series.iter().find(|s| s.name == name)
    }

    pub fn summary(&self, key: &str) -> Option<f64> {
        self.metadata.summary.get(key).copied()
    }

    /// Lengths agree across x, every y and every std column.
    pub fn is_consistent(&self) -> bool {
        self.series
            .iter()
            .all(|s| s.y.len() == self.x.len() && s.std.as_ref().is_none_or(|d| d.len() == self.x.len()))
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.x_label.clone();
        for s in &self.series {
            write!(out, ",{}", s.name).unwrap();
            if s.std.is_some() {
                write!(out, ",{}_std", s.name).unwrap();
            }
        }
        out.push('\n');
        for (i, x) in self.x.iter().enumerate() {
            write!(out, "{x}").unwrap();
            for s in &self.series {
                write!(out, ",{}", s.y[i]).unwrap();
                if let Some(d) = &s.std {
                    write!(out, ",{}", d[i]).unwrap();
                }
            }
            out.push('\n');
        }
        out
    }

    pub fn metadata_json(&self) -> String {
        serde_json::to_string_pretty(&self.metadata).expect("metadata serialises") + "\n"
    }

    /// Writes the CSV and a `.json` sidecar next to it; returns the sidecar path.
    pub fn write(&self, csv_path: &Path) -> Result<PathBuf> {
        let io = |e: std::io::Error| Error::InvalidConfig(format!("{}: {e}", csv_path.display()));
        if let Some(dir) = csv_path.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(dir).map_err(io)?;
        }
        fs::write(csv_path, self.to_csv()).map_err(io)?;
        let meta = csv_path.with_extension("json");
        fs::write(&meta, self.metadata_json()).map_err(io)?;
        Ok(meta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_layout() {
        let mut r = ExperimentResult::new("t", &RunConfig::default(), "v", vec![0.0, 1.5]);
        r.push(Series::with_std("fsm", vec![1.0, 0.5], vec![0.0, 0.01]));
        r.push(Series::new("sinc", vec![1.0, 0.25]));
        assert!(r.is_consistent());
        assert_eq!(r.to_csv(), "v,fsm,fsm_std,sinc\n0,1,0,1\n1.5,0.5,0.01,0.25\n");
    }
}
