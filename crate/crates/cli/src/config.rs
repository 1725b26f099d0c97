//! Session configuration: a plain `key = value` file, overridden by flags.

use std::collections::BTreeSet;
use std::path::Path;

use clap::ValueEnum;
use tstab::{Point, PointOrder, POrder};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

/// Point order, default exceptional parameters and output mode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SessionConfig {
    /// Declared points, lowest first. Empty means "order unlisted points by label".
    pub points: Vec<Point>,
    pub k: i64,
    pub p: POrder,
    pub format: Format,
}

impl Default for SessionConfig {
    fn default() -> Self {
        SessionConfig { points: Vec::new(), k: 0, p: POrder::Finite(0), format: Format::Text }
    }
}

impl SessionConfig {
    /// Parses `key = value` lines; `#` starts a comment. Keys: `points`, `k`, `p`, `format`.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut cfg = SessionConfig::default();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |msg: String| CliError::Usage(format!("config line {}: {msg}", n + 1));
            let (key, value) = line.split_once('=').ok_or_else(|| bad(format!("expected `key = value`, got `{line}`")))?;
            let value = value.trim();
            match key.trim() {
                "points" => cfg.points = parse_points(value).map_err(bad)?,
                "k" => cfg.k = value.parse().map_err(|_| bad(format!("k must be an integer, got `{value}`")))?,
                "p" => cfg.p = value.parse().map_err(|e: tstab::Error| bad(e.to_string()))?,
                "format" => cfg.format = Format::from_str(value, true).map_err(|_| bad(format!("unknown format `{value}`")))?,
                other => return Err(bad(format!("unknown key `{other}`"))),
            }
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn point_order(&self) -> PointOrder {
        PointOrder::new(self.points.clone())
    }
}

/// A comma-separated list of distinct point labels.
pub fn parse_points(value: &str) -> Result<Vec<Point>, String> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for label in value.split(',').map(str::trim).filter(|l| !l.is_empty()) {
        if !Point::is_valid_label(label) {
            return Err(format!("`{label}` is not a valid point label"));
        }
        if !seen.insert(label) {
            return Err(format!("point `{label}` is listed twice"));
        }
        out.push(Point::new(label));
    }
    Ok(out)
}
