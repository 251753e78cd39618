//! CSV tables with `#` provenance headers.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::Context;
use qecbound::bath::StepBound;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// 12 significant digits; `inf` for +∞.
pub fn num(v: f64) -> String {
    if v == f64::INFINITY {
        "inf".into()
    } else {
        format!("{v:.11e}")
    }
}

pub fn steps(b: StepBound<f64>) -> String {
    match b {
        StepBound::Unbounded => "inf".into(),
        StepBound::Finite(v) if v < 9.007_199_254_740_992e15 => format!("{v:.0}"),
        StepBound::Finite(v) => num(v),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Self {
            name: name.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self, header: &Header) -> String {
        let mut out = header.render();
        let _ = writeln!(out, "{}", self.columns.join(","));
        for r in &self.rows {
            let _ = writeln!(out, "{}", r.join(","));
        }
        out
    }
}

pub struct Header {
    pub config_hash: String,
    pub command: String,
}

impl Header {
    pub fn render(&self) -> String {
        format!(
            "# qecbound {VERSION}\n# config_sha256: {}\n# command: {}\n",
            self.config_hash, self.command
        )
    }
}

pub fn write_file(dir: &Path, name: &str, contents: &str) -> anyhow::Result<PathBuf> {
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let path = dir.join(name);
    std::fs::write(&path, contents).with_context(|| format!("writing {}", path.display()))?;
    Ok(path)
}
