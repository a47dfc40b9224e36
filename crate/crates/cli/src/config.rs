//! Resource caps from defaults, an optional `key = value` file, the
//! environment and command-line flags (later sources win).

use std::path::Path;

use compactify::cartan::{Limits, DEFAULT_MAX_CANDIDATES};
use compactify::oracle::OracleLimits;

use crate::CliError;

pub const ENV_MAX_CANDIDATES: &str = "COMPACTIFY_MAX_CANDIDATES";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Settings {
    pub max_candidates: u64,
    pub max_weights: usize,
    pub max_components: usize,
    pub pretty: bool,
}

impl Default for Settings {
    fn default() -> Self {
        let o = OracleLimits::default();
        Settings {
            max_candidates: DEFAULT_MAX_CANDIDATES,
            max_weights: o.max_weights,
            max_components: o.max_components,
            pretty: false,
        }
    }
}

/// Values given on the command line; `None` leaves the setting alone.
#[derive(Debug, Clone, Copy, Default)]
pub struct Overrides {
    pub max_candidates: Option<u64>,
    pub max_weights: Option<usize>,
    pub max_components: Option<usize>,
    pub pretty: bool,
}

impl Settings {
    pub fn limits(&self) -> Limits {
        Limits {
            max_candidates: self.max_candidates,
        }
    }

    pub fn oracle_limits(&self) -> OracleLimits {
        OracleLimits {
            max_weights: self.max_weights,
            max_components: self.max_components,
        }
    }

    pub fn resolve(
        config: Option<&Path>,
        env: Option<&str>,
        flags: Overrides,
    ) -> Result<Settings, CliError> {
        let mut s = Settings::default();
        if let Some(path) = config {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::Config {
                line: 0,
                message: format!("cannot read {}: {e}", path.display()),
            })?;
            s.apply_file(&text)?;
        }
        if let Some(v) = env {
            s.max_candidates = v.trim().parse().map_err(|_| CliError::Env {
                name: ENV_MAX_CANDIDATES,
                value: v.to_string(),
            })?;
        }
        if let Some(v) = flags.max_candidates {
            s.max_candidates = v;
        }
        if let Some(v) = flags.max_weights {
            s.max_weights = v;
        }
        if let Some(v) = flags.max_components {
            s.max_components = v;
        }
        s.pretty |= flags.pretty;
        Ok(s)
    }

    fn apply_file(&mut self, text: &str) -> Result<(), CliError> {
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |message: String| CliError::Config {
                line: n + 1,
                message,
            };
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| bad(format!("expected `key = value`, found `{line}`")))?;
            let (key, value) = (key.trim(), value.trim().trim_matches('"'));
            let number = || -> Result<u64, CliError> {
                value
                    .parse::<u64>()
                    .map_err(|_| bad(format!("`{key}` needs a non-negative integer, found `{value}`")))
            };
            match key {
                "max_candidates" => self.max_candidates = number()?,
                "max_weights" => self.max_weights = number()? as usize,
                "max_components" => self.max_components = number()? as usize,
                "pretty" => {
                    self.pretty = value
                        .parse()
                        .map_err(|_| bad(format!("`pretty` needs true or false, found `{value}`")))?
                }
                _ => return Err(bad(format!("unknown key `{key}`"))),
            }
        }
        Ok(())
    }
}
