//! Optional JSON parameter file. Command-line flags win over the file.
//!
//! The file is an object whose keys are flag names without the leading dashes,
//! e.g. `{"R": 2, "format": "json", "verify": {"tol": 1e-6}}`. A section
//! named after the subcommand takes precedence over top-level keys.

use std::path::Path;

use serde_json::{Map, Value};

use crate::error::{CliError, CliResult};

#[derive(Clone, Debug, Default)]
pub struct Config {
    top: Map<String, Value>,
    section: Map<String, Value>,
}

impl Config {
    pub fn load(path: Option<&Path>, command: &str) -> CliResult<Config> {
        let Some(path) = path else {
            return Ok(Config::default());
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::usage(format!("cannot read config {}: {e}", path.display())))?;
        Config::parse(&text, command)
    }

    pub fn parse(text: &str, command: &str) -> CliResult<Config> {
        let value: Value =
            serde_json::from_str(text).map_err(|e| CliError::usage(format!("invalid config JSON: {e}")))?;
        let Value::Object(mut top) = value else {
            return Err(CliError::usage("config must be a JSON object"));
        };
        let section = match top.remove(command) {
            Some(Value::Object(m)) => m,
            Some(_) => return Err(CliError::usage(format!("config section `{command}` must be an object"))),
            None => Map::new(),
        };
        Ok(Config { top, section })
    }

    fn get(&self, key: &str) -> Option<&Value> {
        self.section.get(key).or_else(|| self.top.get(key))
    }

    pub fn f64(&self, key: &str) -> CliResult<Option<f64>> {
        match self.get(key) {
            None => Ok(None),
            Some(v) => v
                .as_f64()
                .map(Some)
                .ok_or_else(|| CliError::usage(format!("config key `{key}` must be a number"))),
        }
    }

    pub fn usize(&self, key: &str) -> CliResult<Option<usize>> {
        match self.get(key) {
            None => Ok(None),
            Some(v) => v
                .as_u64()
                .map(|n| Some(n as usize))
                .ok_or_else(|| CliError::usage(format!("config key `{key}` must be a non-negative integer"))),
        }
    }

    pub fn string(&self, key: &str) -> CliResult<Option<String>> {
        match self.get(key) {
            None => Ok(None),
            Some(Value::String(s)) => Ok(Some(s.clone())),
            Some(Value::Array(items)) => {
                let parts: Option<Vec<String>> = items.iter().map(|x| x.as_f64().map(|f| f.to_string())).collect();
                parts
                    .map(|p| Some(p.join(",")))
                    .ok_or_else(|| CliError::usage(format!("config key `{key}` must be a string or number list")))
            }
            Some(v) => Ok(Some(v.to_string())),
        }
    }

    /// Flag value if given, otherwise the config value.
    pub fn pick_f64(&self, flag: Option<f64>, key: &str) -> CliResult<Option<f64>> {
        match flag {
            Some(v) => Ok(Some(v)),
            None => self.f64(key),
        }
    }

    pub fn pick_string(&self, flag: Option<String>, key: &str) -> CliResult<Option<String>> {
        match flag {
            Some(v) => Ok(Some(v)),
            None => self.string(key),
        }
    }
}

/// Tolerance from `PSLAB_TOL`, if set.
pub fn env_tolerance() -> CliResult<Option<f64>> {
    match std::env::var("PSLAB_TOL") {
        Err(_) => Ok(None),
        Ok(s) => s
            .trim()
            .parse::<f64>()
            .ok()
            .filter(|t| t.is_finite() && *t > 0.0)
            .map(Some)
            .ok_or_else(|| CliError::usage(format!("PSLAB_TOL must be a positive number, got `{s}`"))),
    }
}
