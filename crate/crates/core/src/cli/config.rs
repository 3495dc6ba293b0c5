//! Flat `key = value` configuration with `#` comments.

use std::fmt;
use std::path::Path;

use super::CliError;

/// Ordered key-value pairs; later assignments replace earlier ones in place.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RawConfig {
    entries: Vec<(String, String)>,
}

impl RawConfig {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: &[(&str, &str)]) -> Self {
        let mut cfg = Self::new();
        for (k, v) in pairs {
            cfg.set(k, v);
        }
        cfg
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut cfg = Self::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("config line {}: expected `key = value`", lineno + 1)))?;
            cfg.set(k.trim(), v.trim());
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Parses a `key=value` flag.
    pub fn set_flag(&mut self, flag: &str) -> Result<(), CliError> {
        let (k, v) = flag
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("--set expects key=value, got `{flag}`")))?;
        self.set(k.trim(), v.trim());
        Ok(())
    }

    pub fn set(&mut self, key: &str, value: &str) {
        match self.entries.iter_mut().find(|(k, _)| k == key) {
            Some(slot) => slot.1 = value.to_string(),
            None => self.entries.push((key.to_string(), value.to_string())),
        }
    }

    pub fn merge(&mut self, other: &RawConfig) {
        for (k, v) in &other.entries {
            self.set(k, v);
        }
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|(k, _)| k.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    #[value(alias = "json-lines")]
    Jsonl,
}

impl std::str::FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "csv" => Ok(Format::Csv),
            "jsonl" | "json-lines" => Ok(Format::Jsonl),
            _ => Err(CliError::Usage(format!("unknown format `{s}` (csv or jsonl)"))),
        }
    }
}

/// `start:stop:steps`, inclusive at both ends; a bare number is a single point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl Grid {
    pub fn fixed(v: f64) -> Self {
        Self { start: v, stop: v, steps: 1 }
    }

    pub fn values(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.start];
        }
        let span = self.stop - self.start;
        (0..self.steps)
            .map(|i| self.start + span * i as f64 / (self.steps - 1) as f64)
            .collect()
    }

    pub fn parse(key: &str, s: &str) -> Result<Self, CliError> {
        let bad = || CliError::Usage(format!("`{key}`: expected a number or start:stop:steps, got `{s}`"));
        let parts: Vec<&str> = s.split(':').map(str::trim).collect();
        match parts.as_slice() {
            [v] => Ok(Self::fixed(parse_f64(v).ok_or_else(bad)?)),
            [a, b, n] => {
                let steps: usize = n.parse().map_err(|_| bad())?;
                if steps == 0 {
                    return Err(CliError::Usage(format!("`{key}`: steps must be at least 1")));
                }
                let (start, stop) = (parse_f64(a).ok_or_else(bad)?, parse_f64(b).ok_or_else(bad)?);
                if !(start.is_finite() && stop.is_finite()) && steps > 1 {
                    return Err(bad());
                }
                Ok(Self { start, stop, steps })
            }
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.steps == 1 {
            write!(f, "{}", self.start)
        } else {
            write!(f, "{}:{}:{}", self.start, self.stop, self.steps)
        }
    }
}

/// Accepts `inf` for extinction ratios alongside ordinary numbers.
pub fn parse_f64(s: &str) -> Option<f64> {
    match s {
        "inf" | "Inf" | "infinity" => Some(f64::INFINITY),
        _ => s.parse().ok(),
    }
}
