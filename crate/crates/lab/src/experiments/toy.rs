use rayon::prelude::*;
use stepbias_core::regime::RegimeKind;
use stepbias_core::toy2d::{ToyRatio, ToyThresholds};
use stepbias_core::ToyInstance;

use super::f;
use crate::config::ExperimentConfig;
use crate::csvio::Table;
use crate::error::Result;

#[derive(Debug, Clone, PartialEq)]
pub struct ToyRow {
    pub sigma1: f64,
    pub sigma2: f64,
    pub eta_s: f64,
    pub eta_b: f64,
    pub alpha: f64,
    pub window_s: ToyThresholds,
    pub window_b: ToyThresholds,
    pub result: ToyRatio,
}

/// Ratio check for each `(σ₁, σ₂)`. Rates default to `0.1/σ₁` and `1.9/σ₁`.
pub fn toy2d(cfg: &ExperimentConfig) -> Result<Vec<ToyRow>> {
    cfg.toy_sigmas
        .par_iter()
        .map(|&[sigma1, sigma2]| {
            let toy = ToyInstance::new(sigma1, sigma2, cfg.iota)?;
            let eta_s = cfg.eta_small.unwrap_or(0.1 / sigma1);
            let eta_b = cfg.eta_big.unwrap_or(1.9 / sigma1);
            let alpha = cfg.toy_alpha;
            let window_s = toy.thresholds(eta_s, alpha, RegimeKind::Small)?;
            let window_b = toy.thresholds(eta_b, alpha, RegimeKind::Big)?;
            let result = toy.ratio_check(eta_s, eta_b, alpha, cfg.t_max)?;
            Ok(ToyRow { sigma1, sigma2, eta_s, eta_b, alpha, window_s, window_b, result })
        })
        .collect()
}

pub(super) fn table(rows: &[ToyRow]) -> Table {
    let mut t = Table::new([
        "sigma1", "sigma2", "kappa", "eta_s", "eta_b", "alpha", "t1_s", "t2_s", "t3_s", "t1_b", "t2_b", "t3_b",
        "steps_s", "steps_b", "excess_s", "excess_b", "test_s", "test_b", "ratio", "ratio_over_kappa", "passes",
    ]);
    for r in rows {
        let q = &r.result;
        t.push(vec![
            f(r.sigma1),
            f(r.sigma2),
            f(q.kappa),
            f(r.eta_s),
            f(r.eta_b),
            f(r.alpha),
            f(r.window_s.t1),
            f(r.window_s.t2),
            f(r.window_s.t3),
            f(r.window_b.t1),
            f(r.window_b.t2),
            f(r.window_b.t3),
            q.run_s.steps.to_string(),
            q.run_b.steps.to_string(),
            f(q.run_s.final_excess()),
            f(q.run_b.final_excess()),
            f(q.test_s),
            f(q.test_b),
            f(q.ratio),
            f(q.ratio / q.kappa),
            q.passes.to_string(),
        ]);
    }
    t
}
