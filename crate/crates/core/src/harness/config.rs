use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::approx::Algorithm;
use crate::kernels::Field;
use crate::params::{min_budget, SplitRule};
use crate::zoo::{MatrixKind, MatrixSpec};
use crate::{Error, Result};

fn default_trials() -> usize {
    20
}

fn default_field() -> Field {
    Field::Complex
}

fn default_sweep() -> SplitRule {
    SplitRule::Oracle
}

fn default_timing() -> bool {
    true
}

/// One experiment: an input, a target rank, budgets and methods.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub matrix: MatrixSpec,
    #[serde(default = "default_field")]
    pub field: Field,
    /// Target rank `r`.
    pub r: usize,
    /// Budgets `T = k + ℓ`. Ignored by the default split.
    #[serde(rename = "T_values", alias = "t_values", default)]
    pub t_values: Vec<usize>,
    pub algorithms: Vec<Algorithm>,
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[serde(default)]
    pub master_seed: u64,
    #[serde(default = "default_sweep")]
    pub sweep: SplitRule,
    /// When false, wall times are recorded as zero so output is
    /// reproducible byte for byte.
    #[serde(default = "default_timing")]
    pub timing: bool,
}

impl ExperimentConfig {
    pub fn new(matrix: MatrixSpec, r: usize, t_values: Vec<usize>, algorithms: Vec<Algorithm>) -> Self {
        ExperimentConfig {
            matrix,
            field: Field::Complex,
            r,
            t_values,
            algorithms,
            trials: default_trials(),
            master_seed: 0,
            sweep: SplitRule::Oracle,
            timing: true,
        }
    }

    pub fn from_toml_str(s: &str) -> Result<Self> {
        let cfg: ExperimentConfig = toml::from_str(s).map_err(|e| Error::arg(format!("config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_toml_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml_str(&text)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::arg("trials must be at least 1"));
        }
        if self.r == 0 {
            return Err(Error::arg("target rank must be positive"));
        }
        if self.algorithms.is_empty() {
            return Err(Error::arg("no algorithms selected"));
        }
        if self.matrix.kind == MatrixKind::File && self.matrix.path.is_none() {
            return Err(Error::arg("file matrix needs a path"));
        }
        match self.sweep {
            SplitRule::Default => {}
            SplitRule::Oracle => {
                if self.t_values.is_empty() {
                    return Err(Error::arg("oracle sweep needs at least one T"));
                }
            }
            rule => {
                if self.t_values.is_empty() {
                    return Err(Error::arg(format!("{} split needs at least one T", rule.tag())));
                }
                let min = min_budget(self.r, self.field);
                if let Some(&t) = self.t_values.iter().find(|&&t| t < min) {
                    return Err(Error::arg(format!("T={t} below 2r + 3alpha + 3 = {min}")));
                }
            }
        }
        Ok(())
    }
}
