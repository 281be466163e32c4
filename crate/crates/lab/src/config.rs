//! JSON experiment configuration.
//!
//! Step sizes in `eta_grid` are multiples of `1/σ₁`, where `σ₁` is the top
//! eigenvalue of the train operator at hand. Level sets in `alpha_grid` and
//! `alpha_rel` are fractions of the initial excess train loss. `eta_small` and
//! `eta_big` are absolute step sizes.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentKind {
    Toy2d,
    QuadraticCertify,
    EtaSweep,
    AlphaSweep,
    ScaleSweep,
    FilterProfiles,
}

impl ExperimentKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ExperimentKind::Toy2d => "toy2d",
            ExperimentKind::QuadraticCertify => "quadratic_certify",
            ExperimentKind::EtaSweep => "eta_sweep",
            ExperimentKind::AlphaSweep => "alpha_sweep",
            ExperimentKind::ScaleSweep => "scale_sweep",
            ExperimentKind::FilterProfiles => "filter_profiles",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: ExperimentKind,
    #[serde(default)]
    pub seed: u64,
    /// Labelled CSV replacing the synthetic training set.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dataset_path: Option<PathBuf>,
    #[serde(default = "defaults::n")]
    pub n: usize,
    #[serde(default = "defaults::d")]
    pub d: usize,
    #[serde(default = "defaults::n_test")]
    pub n_test: usize,
    #[serde(default = "defaults::eta_grid")]
    pub eta_grid: Vec<f64>,
    #[serde(default = "defaults::alpha_grid")]
    pub alpha_grid: Vec<f64>,
    #[serde(default = "defaults::scale_grid")]
    pub scale_grid: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eta_small: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eta_big: Option<f64>,
    #[serde(default = "defaults::output_dir")]
    pub output_dir: PathBuf,
    /// Gaussian kernel scale.
    #[serde(default = "defaults::scale")]
    pub scale: f64,
    /// Ridge parameter λ of `K/n + λI`.
    #[serde(default = "defaults::lambda")]
    pub lambda: f64,
    /// Cluster standard deviation of the synthetic data.
    #[serde(default = "defaults::noise")]
    pub noise: f64,
    #[serde(default = "defaults::alpha_rel")]
    pub alpha_rel: f64,
    /// `(σ₁, σ₂)` pairs for `toy2d`.
    #[serde(default = "defaults::toy_sigmas")]
    pub toy_sigmas: Vec<[f64; 2]>,
    #[serde(default = "defaults::iota")]
    pub iota: f64,
    /// Absolute level set for `toy2d`.
    #[serde(default = "defaults::toy_alpha")]
    pub toy_alpha: f64,
    #[serde(default = "defaults::instances")]
    pub instances: usize,
    #[serde(default = "defaults::max_dim")]
    pub max_dim: usize,
    #[serde(default = "defaults::t_max")]
    pub t_max: u64,
}

mod defaults {
    use std::path::PathBuf;

    pub fn n() -> usize {
        200
    }
    pub fn d() -> usize {
        2
    }
    pub fn n_test() -> usize {
        1000
    }
    /// Ten points from `0.1/σ₁` to `(1 − 10⁻⁵)·2/σ₁`.
    pub fn eta_grid() -> Vec<f64> {
        let (lo, hi) = (0.1, 2.0 * (1.0 - 1e-5));
        (0..10).map(|i| lo + (hi - lo) * i as f64 / 9.0).collect()
    }
    pub fn alpha_grid() -> Vec<f64> {
        vec![1e-1, 3e-2, 1e-2, 3e-3, 1e-3, 3e-4, 1e-4]
    }
    pub fn scale_grid() -> Vec<f64> {
        vec![0.25, 0.5, 1.0, 2.0, 4.0]
    }
    pub fn output_dir() -> PathBuf {
        PathBuf::from("out")
    }
    pub fn scale() -> f64 {
        0.5
    }
    pub fn lambda() -> f64 {
        1e-3
    }
    pub fn noise() -> f64 {
        0.2
    }
    pub fn alpha_rel() -> f64 {
        1e-3
    }
    pub fn toy_sigmas() -> Vec<[f64; 2]> {
        vec![[1.0, 0.2]]
    }
    pub fn iota() -> f64 {
        1.0
    }
    pub fn toy_alpha() -> f64 {
        1e-8
    }
    pub fn instances() -> usize {
        100
    }
    pub fn max_dim() -> usize {
        6
    }
    pub fn t_max() -> u64 {
        100_000_000
    }
}

fn positive_grid(field: &'static str, grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(LabError::validation(field, "must not be empty"));
    }
    if let Some(v) = grid.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
        return Err(LabError::validation(field, format!("entries must be positive and finite, got {v}")));
    }
    Ok(())
}

fn positive(field: &'static str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(LabError::validation(field, format!("must be positive and finite, got {v}")))
    }
}

impl ExperimentConfig {
    /// Config with every default filled in.
    pub fn new(experiment: ExperimentKind) -> Self {
        serde_json::from_value(serde_json::json!({ "experiment": experiment })).expect("defaults deserialize")
    }

    pub fn from_json(text: &str, origin: &str) -> Result<Self> {
        let cfg: ExperimentConfig = serde_json::from_str(text).map_err(|e| LabError::Parse {
            path: origin.to_string(),
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<()> {
        use ExperimentKind::*;
        match self.experiment {
            EtaSweep => positive_grid("eta_grid", &self.eta_grid)?,
            AlphaSweep => {
                positive_grid("alpha_grid", &self.alpha_grid)?;
                if self.alpha_grid.iter().any(|a| *a >= 1.0) {
                    return Err(LabError::validation("alpha_grid", "relative level sets must be below 1"));
                }
            }
            ScaleSweep => positive_grid("scale_grid", &self.scale_grid)?,
            Toy2d => {
                if self.toy_sigmas.is_empty() {
                    return Err(LabError::validation("toy_sigmas", "must not be empty"));
                }
                if self.toy_sigmas.iter().any(|[a, b]| !(b.is_finite() && *b > 0.0 && a > b && a.is_finite())) {
                    return Err(LabError::validation("toy_sigmas", "each pair needs sigma1 > sigma2 > 0"));
                }
                positive("toy_alpha", self.toy_alpha)?;
                if !(self.iota.is_finite() && self.iota != 0.0) {
                    return Err(LabError::validation("iota", "must be finite and nonzero"));
                }
            }
            QuadraticCertify => {
                if self.instances == 0 {
                    return Err(LabError::validation("instances", "must be at least 1"));
                }
                if self.max_dim < 2 {
                    return Err(LabError::validation("max_dim", "must be at least 2"));
                }
            }
            FilterProfiles => {}
        }
        if matches!(self.experiment, EtaSweep | AlphaSweep | ScaleSweep) {
            if self.dataset_path.is_none() && self.n < 2 {
                return Err(LabError::validation("n", "must be at least 2"));
            }
            if self.d == 0 {
                return Err(LabError::validation("d", "must be at least 1"));
            }
            if self.n_test == 0 {
                return Err(LabError::validation("n_test", "must be at least 1"));
            }
            positive("scale", self.scale)?;
            positive("noise", self.noise)?;
            positive("alpha_rel", self.alpha_rel)?;
            if self.alpha_rel >= 1.0 {
                return Err(LabError::validation("alpha_rel", "must be below 1"));
            }
            if !(self.lambda.is_finite() && self.lambda >= 0.0) {
                return Err(LabError::validation("lambda", "must be finite and nonnegative"));
            }
        }
        if let Some(e) = self.eta_small {
            positive("eta_small", e)?;
        }
        if let Some(e) = self.eta_big {
            positive("eta_big", e)?;
        }
        if self.t_max == 0 {
            return Err(LabError::validation("t_max", "must be at least 1"));
        }
        Ok(())
    }
}

pub fn load_config(path: &Path) -> Result<ExperimentConfig> {
    let text = fs::read_to_string(path).map_err(|e| LabError::io(path, e))?;
    ExperimentConfig::from_json(&text, &path.display().to_string())
}
