use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_BUDGET: u64 = 100_000_000;
pub const BUDGET_ENV: &str = "TAMAGAWA_BUDGET";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Euler,
    Lifting,
    Globalinv,
    Density,
    Sha,
    Tnc,
    All,
}

impl FromStr for Command {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "euler" => Command::Euler,
            "lifting" => Command::Lifting,
            "globalinv" => Command::Globalinv,
            "density" => Command::Density,
            "sha" => Command::Sha,
            "tnc" => Command::Tnc,
            "all" => Command::All,
            _ => return Err(Error::Config(format!("unknown command '{s}'"))),
        })
    }
}

/// Everything a run needs. Built from flags layered over an optional TOML
/// file, then the budget environment variable, then defaults.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub tori: Vec<String>,
    pub pmax: u64,
    pub kmax: u32,
    pub tol: f64,
    pub budget: u64,
    pub jobs: Option<usize>,
    pub out: Option<PathBuf>,
    pub timings: bool,
}

/// Settings that may come from either the command line or the file.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Settings {
    pub torus: Vec<String>,
    pub pmax: Option<u64>,
    pub kmax: Option<u32>,
    pub tol: Option<f64>,
    pub budget: Option<u64>,
    pub jobs: Option<usize>,
    pub out: Option<PathBuf>,
    pub timings: Option<bool>,
}

impl Settings {
    pub fn from_toml(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum OneOrMany {
            One(String),
            Many(Vec<String>),
        }
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            torus: Option<OneOrMany>,
            pmax: Option<u64>,
            kmax: Option<u32>,
            tol: Option<f64>,
            budget: Option<u64>,
            jobs: Option<usize>,
            out: Option<PathBuf>,
            timings: Option<bool>,
        }
        let raw: Raw = toml::from_str(text).map_err(|e| Error::Config(format!("config file: {e}")))?;
        Ok(Settings {
            torus: match raw.torus {
                None => vec![],
                Some(OneOrMany::One(s)) => vec![s],
                Some(OneOrMany::Many(v)) => v,
            },
            pmax: raw.pmax,
            kmax: raw.kmax,
            tol: raw.tol,
            budget: raw.budget,
            jobs: raw.jobs,
            out: raw.out,
            timings: raw.timings,
        })
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml(&text)
    }
}

fn env_budget() -> Result<Option<u64>> {
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Error::Config(format!("{BUDGET_ENV}='{v}' is not a non-negative integer"))),
        Err(_) => Ok(None),
    }
}

impl RunConfig {
    /// Flags win over the file; the environment only supplies a default budget.
    pub fn merge(command: Command, flags: Settings, file: Settings) -> Result<Self> {
        let tori = if !flags.torus.is_empty() {
            flags.torus
        } else if !file.torus.is_empty() {
            file.torus
        } else {
            vec!["norm1:-1".to_string()]
        };
        let budget = match flags.budget.or(file.budget) {
            Some(b) => b,
            None => env_budget()?.unwrap_or(DEFAULT_BUDGET),
        };
        let cfg = RunConfig {
            command,
            tori,
            pmax: flags.pmax.or(file.pmax).unwrap_or(97),
            kmax: flags.kmax.or(file.kmax).unwrap_or(3),
            tol: flags.tol.or(file.tol).unwrap_or(1e-6),
            budget,
            jobs: flags.jobs.or(file.jobs),
            out: flags.out.or(file.out),
            timings: flags.timings.or(file.timings).unwrap_or(false),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0) {
            return Err(Error::Config(format!("tol must be > 0, got {}", self.tol)));
        }
        if self.pmax < 3 {
            return Err(Error::Config(format!("pmax must be >= 3, got {}", self.pmax)));
        }
        if self.budget < 10_000 {
            return Err(Error::Config(format!("budget must be >= 10000, got {}", self.budget)));
        }
        if self.kmax == 0 {
            return Err(Error::Config("kmax must be >= 1".into()));
        }
        if self.jobs == Some(0) {
            return Err(Error::Config("jobs must be >= 1".into()));
        }
        Ok(())
    }

    /// The settings that can influence results; worker count and output
    /// path are left out so reports are comparable across machines.
    pub fn echo(&self) -> serde_json::Value {
        serde_json::json!({
            "command": self.command,
            "torus": self.tori,
            "pmax": self.pmax,
            "kmax": self.kmax,
            "tol": self.tol,
            "budget": self.budget,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_win_over_file() {
        let file = Settings::from_toml("torus = 'norm1:-3'\npmax = 50\ntol = 1e-3\n").unwrap();
        let flags = Settings { pmax: Some(30), ..Settings::default() };
        let c = RunConfig::merge(Command::Euler, flags, file).unwrap();
        assert_eq!((c.pmax, c.tol, c.tori.clone()), (30, 1e-3, vec!["norm1:-3".to_string()]));
        let file = Settings::from_toml("torus = ['norm1:-1', 'quot:5']\n").unwrap();
        assert_eq!(file.torus.len(), 2);
    }

    #[test]
    fn config_errors_name_the_field() {
        let e = Settings::from_toml("pmax = 'x'\n").unwrap_err().to_string();
        assert!(e.contains("pmax") && e.contains("line 1"), "{e}");
        let e = Settings::from_toml("tolerance = 1\n").unwrap_err().to_string();
        assert!(e.contains("tolerance"), "{e}");
        let bad = Settings { tol: Some(-1.0), ..Settings::default() };
        assert!(RunConfig::merge(Command::Tnc, bad, Settings::default()).is_err());
        let bad = Settings { budget: Some(10), ..Settings::default() };
        assert!(RunConfig::merge(Command::Tnc, bad, Settings::default()).is_err());
        let bad = Settings { pmax: Some(2), ..Settings::default() };
        assert!(RunConfig::merge(Command::Tnc, bad, Settings::default()).is_err());
    }
}
