//! Flat `key = value` experiment configuration.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{Error, Result};

/// Parsed experiment parameters. Keys are case-sensitive; later entries win.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ExperimentConfig {
    pub experiment: String,
    params: BTreeMap<String, String>,
    pub output_path: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn new(experiment: impl Into<String>) -> Self {
        Self {
            experiment: experiment.into(),
            ..Self::default()
        }
    }

    /// Parses lines of `key = value`; blank lines and `#` comments are skipped.
    /// The keys `experiment` and `output` fill the matching fields.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| {
                Error::Parse(format!(
                    "line {}: expected key = value, got '{raw}'",
                    lineno + 1
                ))
            })?;
            let (k, v) = (k.trim(), v.trim());
            if k.is_empty() {
                return Err(Error::Parse(format!("line {}: empty key", lineno + 1)));
            }
            cfg.set(k, v);
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&fs::read_to_string(path)?)
    }

    pub fn set(&mut self, key: &str, value: impl Into<String>) {
        let value = value.into();
        match key {
            "experiment" => self.experiment = value,
            "output" => self.output_path = Some(PathBuf::from(value)),
            _ => {
                self.params.insert(key.to_string(), value);
            }
        }
    }

    pub fn raw(&self, key: &str) -> Option<&str> {
        self.params.get(key).map(String::as_str)
    }

    /// Typed lookup with a default for missing keys.
    pub fn get<T: FromStr>(&self, key: &str, default: T) -> Result<T> {
        match self.params.get(key) {
            None => Ok(default),
            Some(v) => v
                .parse()
                .map_err(|_| Error::Parse(format!("bad value '{v}' for key '{key}'"))),
        }
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.params.keys().map(String::as_str)
    }

    /// Rejects keys outside `allowed`, catching typos before a long run.
    pub fn expect_keys(&self, allowed: &[&str]) -> Result<()> {
        match self.keys().find(|k| !allowed.contains(k)) {
            Some(k) => Err(Error::Parse(format!(
                "unknown key '{k}' for experiment '{}'; allowed: {}",
                self.experiment,
                allowed.join(", ")
            ))),
            None => Ok(()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_flat_files() {
        let cfg = ExperimentConfig::parse(
            "# decay run\nexperiment = decay\nbeta=0.9\n\nq = 6 # target norm\noutput=out.csv\nbeta = 0.8\n",
        )
        .unwrap();
        assert_eq!(cfg.experiment, "decay");
        assert_eq!(cfg.get("beta", 0.0).unwrap(), 0.8);
        assert_eq!(cfg.get("q", 0u32).unwrap(), 6);
        assert_eq!(cfg.get("p", 2.0).unwrap(), 2.0);
        assert_eq!(cfg.output_path, Some(PathBuf::from("out.csv")));
        assert!(cfg.get::<f64>("missing", 1.0).is_ok());
        assert!(cfg.expect_keys(&["beta"]).is_err());
        assert!(cfg.expect_keys(&["beta", "q"]).is_ok());
    }

    #[test]
    fn rejects_malformed_lines() {
        assert!(ExperimentConfig::parse("beta 0.9").is_err());
        assert!(ExperimentConfig::parse("= 3").is_err());
        let cfg = ExperimentConfig::parse("beta = abc").unwrap();
        assert!(cfg.get::<f64>("beta", 0.0).is_err());
    }
}
