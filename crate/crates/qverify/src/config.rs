//! Run configuration: a JSON file, then command-line overrides.

use crate::CliError;
use qseries::identities::{find, registry, PeriodicWeight};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

/// Environment variable naming the floating-point backend.
pub const PRECISION_ENV: &str = "QVERIFY_PRECISION";

/// Names accepted for the one backend there is, IEEE double.
pub const DOUBLE_NAMES: [&str; 2] = ["double", "f64"];

pub const Q_LO_MIN: f64 = 0.05;
pub const Q_HI_MAX: f64 = 0.95;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// Identity ids, or `["all"]`.
    pub identities: Vec<String>,
    pub seed: u64,
    pub samples: usize,
    pub tol_overrides: BTreeMap<String, f64>,
    pub q_range: [f64; 2],
    pub precision: String,
    /// Weight for records with a periodic slot of the same kind; records
    /// with another slot kind use their default.
    pub weight: Option<String>,
    pub report: Option<PathBuf>,
    pub csv: Option<PathBuf>,
    pub workers: Option<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            identities: vec!["all".into()],
            seed: 7,
            samples: 50,
            tol_overrides: BTreeMap::new(),
            q_range: [0.1, 0.9],
            precision: "double".into(),
            weight: None,
            report: None,
            csv: None,
            workers: None,
        }
    }
}

impl RunConfig {
    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }

    /// `QVERIFY_PRECISION` wins over the file when set.
    pub fn apply_env(&mut self) {
        if let Ok(p) = std::env::var(PRECISION_ENV) {
            if !p.is_empty() {
                self.precision = p;
            }
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let [lo, hi] = self.q_range;
        if !(Q_LO_MIN <= lo && lo < hi && hi <= Q_HI_MAX) {
            return Err(CliError::Config(format!("q range [{lo}, {hi}] must satisfy {Q_LO_MIN} <= lo < hi <= {Q_HI_MAX}")));
        }
        if self.samples < 1 {
            return Err(CliError::Config("samples must be at least 1".into()));
        }
        if !DOUBLE_NAMES.contains(&self.precision.to_ascii_lowercase().as_str()) {
            return Err(CliError::Config(format!(
                "precision {:?} is not available; the only backend is double (f64)",
                self.precision
            )));
        }
        if self.identities.is_empty() {
            return Err(CliError::Config("no identities selected".into()));
        }
        self.selected()?;
        for (id, tol) in &self.tol_overrides {
            find(id).map_err(|e| CliError::Config(e.to_string()))?;
            if !(*tol > 0.0 && tol.is_finite()) {
                return Err(CliError::Config(format!("tolerance for {id} must be positive")));
            }
        }
        if let Some(w) = &self.weight {
            if PeriodicWeight::by_name(w).is_none() {
                return Err(CliError::Config(format!("unknown weight {w}; expected one, cosine or sine")));
            }
        }
        if self.workers == Some(0) {
            return Err(CliError::Config("workers must be at least 1".into()));
        }
        Ok(())
    }

    /// Selected ids in registry order, duplicates dropped.
    pub fn selected(&self) -> Result<Vec<&'static str>, CliError> {
        if self.identities.iter().any(|s| s == "all") {
            return Ok(registry().iter().map(|r| r.id).collect());
        }
        for id in &self.identities {
            find(id).map_err(|e| CliError::Config(e.to_string()))?;
        }
        Ok(registry().iter().map(|r| r.id).filter(|id| self.identities.iter().any(|s| s == id)).collect())
    }
}

/// Parse `id=eps`.
pub fn parse_tol_override(s: &str) -> Result<(String, f64), String> {
    let (id, eps) = s.split_once('=').ok_or_else(|| format!("expected id=eps, got {s:?}"))?;
    let eps: f64 = eps.trim().parse().map_err(|e| format!("bad tolerance in {s:?}: {e}"))?;
    Ok((id.trim().to_string(), eps))
}

/// Parse a comma-separated list of reals.
pub fn parse_q_seq(s: &str) -> Result<Vec<f64>, CliError> {
    s.split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|e| CliError::Config(format!("bad q value {t:?}: {e}"))))
        .collect()
}
