use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::noise::ErrorMode;

use super::records::CodeChoice;

/// Largest admissible noise level in a sweep.
pub const MAX_NOISE: f64 = 1e-2;
/// Smallest admissible shot count per cell.
pub const MIN_SHOTS: usize = 100;

pub fn default_grid() -> Vec<f64> {
    vec![1e-4, 3e-4, 1e-3, 3e-3, 1e-2]
}

fn default_codes() -> Vec<CodeChoice> {
    CodeChoice::ALL.to_vec()
}

fn default_modes() -> Vec<ErrorMode> {
    ErrorMode::ALL.to_vec()
}

fn default_shots() -> usize {
    2000
}

fn default_rounds() -> usize {
    1
}

/// A PST sweep over codes, error modes and noise levels for one classifier.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    /// Number of classifier qubits (1 or 2).
    pub classifier: usize,
    #[serde(default = "default_codes")]
    pub codes: Vec<CodeChoice>,
    #[serde(default = "default_modes")]
    pub modes: Vec<ErrorMode>,
    #[serde(default = "default_grid")]
    pub noise_grid: Vec<f64>,
    #[serde(default = "default_shots")]
    pub shots: usize,
    #[serde(default)]
    pub master_seed: u64,
    #[serde(default = "default_rounds")]
    pub rounds_per_layer: usize,
    /// Synthesis artifact providing the reference points.
    pub synthesis_path: PathBuf,
    /// Result CSV; a `.timing.csv` sidecar is written next to it.
    pub output_path: PathBuf,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if !(1..=2).contains(&self.classifier) {
            return Err(invalid(format!("classifier must have 1 or 2 qubits, got {}", self.classifier)));
        }
        if let Some(p) = self.noise_grid.iter().find(|p| !(**p > 0.0 && **p <= MAX_NOISE)) {
            return Err(invalid(format!("noise level {p} outside (0, {MAX_NOISE}]")));
        }
        if self.shots < MIN_SHOTS {
            return Err(invalid(format!("shots must be at least {MIN_SHOTS}")));
        }
        if self.rounds_per_layer == 0 {
            return Err(invalid("rounds_per_layer must be at least 1"));
        }
        Ok(())
    }

    /// Parses JSON and validates. Relative paths are resolved against `base`.
    pub fn from_json(text: &str, base: &Path) -> Result<ExperimentConfig> {
        let mut c: ExperimentConfig = serde_json::from_str(text)?;
        if c.synthesis_path.is_relative() {
            c.synthesis_path = base.join(&c.synthesis_path);
        }
        if c.output_path.is_relative() {
            c.output_path = base.join(&c.output_path);
        }
        c.validate()?;
        Ok(c)
    }

    /// Reads a JSON config file; relative paths are taken relative to its directory.
    pub fn load(path: &Path) -> Result<ExperimentConfig> {
        let text = std::fs::read_to_string(path)?;
        let base = path.parent().unwrap_or(Path::new("."));
        ExperimentConfig::from_json(&text, base)
    }
}
