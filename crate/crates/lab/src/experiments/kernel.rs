use rayon::prelude::*;
use stepbias_core::gd::run_to_level_set;
use stepbias_core::regime::classify_rate;
use stepbias_core::{Dataset, DualMode, GdRun, KernelProblem, StopStatus};

use super::{default_rates, f};
use crate::config::ExperimentConfig;
use crate::csvio::Table;
use crate::dataset::load_dataset;
use crate::error::Result;
use crate::seeds::stream;
use crate::svg::{Axes, Series};
use crate::synth::two_clusters;

/// Kernel problem on the training set plus a held-out test set.
#[derive(Debug, Clone)]
pub struct KernelSetup {
    pub problem: KernelProblem,
    pub test: Dataset,
    /// Excess train loss at `α = 0`.
    pub initial_excess: f64,
}

impl KernelSetup {
    pub fn sigma1(&self) -> f64 {
        self.problem.objective().spectrum().largest()
    }

    pub fn kappa(&self) -> f64 {
        self.problem.objective().spectrum().condition_number()
    }
}

/// Train data from `dataset_path` or the `train` stream, test data from the `test` stream.
pub fn kernel_setup(cfg: &ExperimentConfig, scale: f64) -> Result<KernelSetup> {
    let train = match &cfg.dataset_path {
        Some(path) => load_dataset(path)?,
        None => two_clusters(cfg.n, cfg.d, cfg.noise, &mut stream(cfg.seed, "train"))?,
    };
    let test = two_clusters(cfg.n_test, train.dim(), cfg.noise, &mut stream(cfg.seed, "test"))?;
    let problem = KernelProblem::new(train, scale, cfg.lambda)?;
    let initial_excess = problem.objective().excess(&vec![0.0; problem.n()])?;
    Ok(KernelSetup { problem, test, initial_excess })
}

/// A run from `α = 0` stopped on an excess-loss level set, mapped back to dual coefficients.
#[derive(Debug, Clone)]
pub struct Fit {
    pub eta: f64,
    pub regime: &'static str,
    pub run: GdRun,
    pub alpha: Vec<f64>,
    /// `|⟨θ − θ̂*, e₁⟩|`.
    pub mu1_abs: f64,
    /// `‖θ − θ̂*‖_H`.
    pub hilbert: f64,
    /// `NaN` for diverged runs.
    pub test_accuracy: f64,
    pub train_accuracy: f64,
}

pub fn fit(setup: &KernelSetup, eta: f64, level: f64, t_max: u64) -> Result<Fit> {
    let p = &setup.problem;
    let obj = p.objective();
    let run = run_to_level_set(obj, &vec![0.0; p.n()], eta, level, t_max)?;
    let alpha = p.alpha_closed_form(&vec![0.0; p.n()], DualMode::Primal, eta, run.steps)?;
    let (test_accuracy, train_accuracy) = if run.stop_status == StopStatus::Diverged {
        (f64::NAN, f64::NAN)
    } else {
        (1.0 - p.binary_error(&alpha, &setup.test)?, 1.0 - p.binary_error(&alpha, p.dataset())?)
    };
    Ok(Fit {
        eta,
        regime: classify_rate(eta, obj.spectrum()).kind.as_str(),
        mu1_abs: run.mu[0].abs(),
        hilbert: run.mu.iter().map(|m| m * m).sum::<f64>().sqrt(),
        run,
        alpha,
        test_accuracy,
        train_accuracy,
    })
}

#[derive(Debug, Clone)]
pub struct EtaSweep {
    pub sigma1: f64,
    pub kappa: f64,
    pub level: f64,
    /// Step sizes in units of `1/σ₁`.
    pub grid: Vec<f64>,
    pub fits: Vec<Fit>,
    pub small: Fit,
    pub big: Fit,
}

pub fn eta_sweep(cfg: &ExperimentConfig) -> Result<EtaSweep> {
    let setup = kernel_setup(cfg, cfg.scale)?;
    let sigma1 = setup.sigma1();
    let level = cfg.alpha_rel * setup.initial_excess;
    let fits = cfg.eta_grid.par_iter().map(|m| fit(&setup, m / sigma1, level, cfg.t_max)).collect::<Result<Vec<_>>>()?;
    let (eta_s, eta_b) = default_rates(cfg, sigma1);
    let small = fit(&setup, eta_s, level, cfg.t_max)?;
    let big = fit(&setup, eta_b, level, cfg.t_max)?;
    Ok(EtaSweep { sigma1, kappa: setup.kappa(), level, grid: cfg.eta_grid.clone(), fits, small, big })
}

const FIT_COLUMNS: [&str; 9] =
    ["eta", "regime", "steps", "status", "excess", "mu1_abs", "hilbert", "test_accuracy", "train_accuracy"];

fn fit_cells(x: &Fit) -> Vec<String> {
    vec![
        f(x.eta),
        x.regime.to_string(),
        x.run.steps.to_string(),
        x.run.stop_status.as_str().to_string(),
        f(x.run.final_excess()),
        f(x.mu1_abs),
        f(x.hilbert),
        f(x.test_accuracy),
        f(x.train_accuracy),
    ]
}

pub(super) fn eta_table(s: &EtaSweep) -> Table {
    let mut t = Table::new(["eta_sigma1"].into_iter().chain(FIT_COLUMNS).chain(["alpha", "sigma1"]));
    for (m, x) in s.grid.iter().zip(&s.fits) {
        let mut row = vec![f(*m)];
        row.extend(fit_cells(x));
        row.push(f(s.level));
        row.push(f(s.sigma1));
        t.push(row);
    }
    t
}

pub(super) fn rates_table(s: &EtaSweep) -> Table {
    let mut t = Table::new(["rate"].into_iter().chain(FIT_COLUMNS).chain(["alpha", "kappa"]));
    for (name, x) in [("small", &s.small), ("big", &s.big)] {
        let mut row = vec![name.to_string()];
        row.extend(fit_cells(x));
        row.push(f(s.level));
        row.push(f(s.kappa));
        t.push(row);
    }
    t
}

fn normalized(points: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    let top = points.iter().map(|p| p.1.abs()).filter(|v| v.is_finite()).fold(0.0, f64::max);
    if top > 0.0 {
        points.into_iter().map(|(x, y)| (x, y / top)).collect()
    } else {
        points
    }
}

pub(super) fn eta_series(s: &EtaSweep) -> Vec<Series> {
    let col = |g: fn(&Fit) -> f64| s.grid.iter().zip(&s.fits).map(|(m, x)| (*m, g(x))).collect::<Vec<_>>();
    vec![
        Series::new("test accuracy", col(|x| x.test_accuracy)),
        Series::new("|<theta - opt, e1>| / max", normalized(col(|x| x.mu1_abs))),
        Series::new("Hilbert distance / max", normalized(col(|x| x.hilbert))),
    ]
}

pub(super) fn eta_axes() -> Axes {
    Axes {
        title: "Fixed level set, varying step size".into(),
        x_label: "eta * sigma1".into(),
        y_label: "value".into(),
        log_y: false,
        guides: vec![(2.0, "2/s1".into())],
    }
}

#[derive(Debug, Clone)]
pub struct AlphaRow {
    pub alpha_rel: f64,
    pub level: f64,
    pub small: Fit,
    pub big: Fit,
}

pub fn alpha_sweep(cfg: &ExperimentConfig) -> Result<Vec<AlphaRow>> {
    let setup = kernel_setup(cfg, cfg.scale)?;
    let (eta_s, eta_b) = default_rates(cfg, setup.sigma1());
    cfg.alpha_grid
        .par_iter()
        .map(|&alpha_rel| {
            let level = alpha_rel * setup.initial_excess;
            let small = fit(&setup, eta_s, level, cfg.t_max)?;
            let big = fit(&setup, eta_b, level, cfg.t_max)?;
            Ok(AlphaRow { alpha_rel, level, small, big })
        })
        .collect()
}

const PAIR_COLUMNS: [&str; 12] = [
    "eta_s", "eta_b", "steps_s", "steps_b", "status_s", "status_b", "hilbert_s", "hilbert_b", "test_accuracy_s",
    "test_accuracy_b", "train_accuracy_s", "train_accuracy_b",
];

fn pair_cells(s: &Fit, b: &Fit) -> Vec<String> {
    vec![
        f(s.eta),
        f(b.eta),
        s.run.steps.to_string(),
        b.run.steps.to_string(),
        s.run.stop_status.as_str().to_string(),
        b.run.stop_status.as_str().to_string(),
        f(s.hilbert),
        f(b.hilbert),
        f(s.test_accuracy),
        f(b.test_accuracy),
        f(s.train_accuracy),
        f(b.train_accuracy),
    ]
}

pub(super) fn alpha_table(rows: &[AlphaRow]) -> Table {
    let mut t = Table::new(["alpha_rel", "alpha"].into_iter().chain(PAIR_COLUMNS));
    for r in rows {
        let mut row = vec![f(r.alpha_rel), f(r.level)];
        row.extend(pair_cells(&r.small, &r.big));
        t.push(row);
    }
    t
}

pub(super) fn alpha_series(rows: &[AlphaRow]) -> Vec<Series> {
    let col = |g: fn(&AlphaRow) -> f64| rows.iter().map(|r| (r.alpha_rel.log10(), g(r))).collect::<Vec<_>>();
    vec![
        Series::new("small step", col(|r| r.small.test_accuracy)),
        Series::new("big step", col(|r| r.big.test_accuracy)),
    ]
}

pub(super) fn alpha_axes() -> Axes {
    Axes {
        title: "Test accuracy against the level set".into(),
        x_label: "log10(alpha / initial excess)".into(),
        y_label: "test accuracy".into(),
        ..Axes::default()
    }
}

#[derive(Debug, Clone)]
pub struct ScaleRow {
    pub scale: f64,
    pub sigma1: f64,
    pub kappa: f64,
    pub level: f64,
    pub small: Fit,
    pub big: Fit,
}

pub fn scale_sweep(cfg: &ExperimentConfig) -> Result<Vec<ScaleRow>> {
    cfg.scale_grid
        .par_iter()
        .map(|&scale| {
            let setup = kernel_setup(cfg, scale)?;
            let sigma1 = setup.sigma1();
            let (eta_s, eta_b) = default_rates(cfg, sigma1);
            let level = cfg.alpha_rel * setup.initial_excess;
            let small = fit(&setup, eta_s, level, cfg.t_max)?;
            let big = fit(&setup, eta_b, level, cfg.t_max)?;
            Ok(ScaleRow { scale, sigma1, kappa: setup.kappa(), level, small, big })
        })
        .collect()
}

pub(super) fn scale_table(rows: &[ScaleRow]) -> Table {
    let mut t = Table::new(["scale", "sigma1", "kappa", "alpha"].into_iter().chain(PAIR_COLUMNS));
    for r in rows {
        let mut row = vec![f(r.scale), f(r.sigma1), f(r.kappa), f(r.level)];
        row.extend(pair_cells(&r.small, &r.big));
        t.push(row);
    }
    t
}

pub(super) fn scale_series(rows: &[ScaleRow]) -> Vec<Series> {
    let col = |g: fn(&ScaleRow) -> f64| rows.iter().map(|r| (r.scale.log2(), g(r))).collect::<Vec<_>>();
    vec![
        Series::new("small step", col(|r| r.small.test_accuracy)),
        Series::new("big step", col(|r| r.big.test_accuracy)),
    ]
}

pub(super) fn scale_axes() -> Axes {
    Axes {
        title: "Test accuracy against kernel scale".into(),
        x_label: "log2(scale)".into(),
        y_label: "test accuracy".into(),
        ..Axes::default()
    }
}
