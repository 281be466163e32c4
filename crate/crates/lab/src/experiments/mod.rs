//! Experiment drivers. Each returns typed rows; [`run_experiment`] writes them
//! as CSV plus an SVG figure and returns the manifest.

mod certify;
mod filters;
mod kernel;
mod toy;

use std::fs;
use std::path::Path;

use stepbias_core::GdRun;

pub use certify::{quadratic_certify, CertifyRow};
pub use filters::{attenuation_table, filter_argmax_table, filter_residuals, FIG5_FILTERS};
pub use kernel::{alpha_sweep, eta_sweep, kernel_setup, scale_sweep, AlphaRow, EtaSweep, Fit, KernelSetup, ScaleRow};
pub use toy::{toy2d, ToyRow};

use crate::config::{ExperimentConfig, ExperimentKind};
use crate::csvio::{fmt_f64, Table};
use crate::error::{LabError, Result};
use crate::manifest::Manifest;
use crate::svg::{render, Axes, Series};

/// Default rates: `1/σ₁` and `(1 − 10⁻⁵)·2/σ₁`.
pub const TAU: f64 = 1.0 - 1e-5;

pub fn default_rates(cfg: &ExperimentConfig, sigma1: f64) -> (f64, f64) {
    (cfg.eta_small.unwrap_or(1.0 / sigma1), cfg.eta_big.unwrap_or(TAU * 2.0 / sigma1))
}

fn f(x: f64) -> String {
    fmt_f64(x)
}

/// `(step, excess)` pairs of a run's loss trace.
fn trace_points(run: &GdRun) -> Vec<(f64, f64)> {
    run.loss_trace
        .iter()
        .enumerate()
        .map(|(i, &l)| (((i as u64) * run.trace_stride).min(run.steps) as f64, l))
        .collect()
}

fn put_table(m: &mut Manifest, dir: &Path, name: &str, t: &Table) -> Result<()> {
    m.write(dir, name, &t.to_bytes())
}

fn put_svg(m: &mut Manifest, dir: &Path, name: &str, series: &[Series], axes: &Axes) -> Result<()> {
    m.write(dir, name, render(series, axes)?.as_bytes())
}

/// Runs the configured experiment into `cfg.output_dir`.
///
/// Outputs are written before a certification failure is reported, so the
/// failing rows can be inspected.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Manifest> {
    cfg.validate()?;
    let dir = cfg.output_dir.as_path();
    fs::create_dir_all(dir).map_err(|e| LabError::io(dir, e))?;
    let mut m = Manifest::new(cfg.experiment.as_str(), cfg.seed);
    let mut failure = None;
    match cfg.experiment {
        ExperimentKind::Toy2d => {
            let rows = toy2d(cfg)?;
            put_table(&mut m, dir, "toy2d_ratio.csv", &toy::table(&rows))?;
            let first = &rows[0];
            let series = vec![
                Series::new(format!("eta_s = {}", f(first.eta_s)), trace_points(&first.result.run_s)),
                Series::new(format!("eta_b = {}", f(first.eta_b)), trace_points(&first.result.run_b)),
            ];
            let axes = Axes {
                title: format!("Train excess loss, sigma = ({}, {})", f(first.sigma1), f(first.sigma2)),
                x_label: "step".into(),
                y_label: "excess train loss".into(),
                log_y: true,
                guides: vec![],
            };
            put_svg(&mut m, dir, "toy2d_loss.svg", &series, &axes)?;
        }
        ExperimentKind::QuadraticCertify => {
            let rows = quadratic_certify(cfg)?;
            put_table(&mut m, dir, "certify.csv", &certify::table(&rows))?;
            failure = certify::failure_summary(&rows);
        }
        ExperimentKind::EtaSweep => {
            let sweep = eta_sweep(cfg)?;
            put_table(&mut m, dir, "eta_sweep.csv", &kernel::eta_table(&sweep))?;
            put_table(&mut m, dir, "eta_sweep_rates.csv", &kernel::rates_table(&sweep))?;
            put_svg(&mut m, dir, "eta_sweep.svg", &kernel::eta_series(&sweep), &kernel::eta_axes())?;
        }
        ExperimentKind::AlphaSweep => {
            let rows = alpha_sweep(cfg)?;
            put_table(&mut m, dir, "alpha_sweep.csv", &kernel::alpha_table(&rows))?;
            put_svg(&mut m, dir, "alpha_sweep.svg", &kernel::alpha_series(&rows), &kernel::alpha_axes())?;
        }
        ExperimentKind::ScaleSweep => {
            let rows = scale_sweep(cfg)?;
            put_table(&mut m, dir, "scale_sweep.csv", &kernel::scale_table(&rows))?;
            put_svg(&mut m, dir, "scale_sweep.svg", &kernel::scale_series(&rows), &kernel::scale_axes())?;
        }
        ExperimentKind::FilterProfiles => {
            let residuals = filter_residuals();
            put_table(&mut m, dir, "filter_residuals.csv", &residuals)?;
            put_svg(&mut m, dir, "filter_residuals.svg", &filters::residual_series(&residuals), &filters::residual_axes())?;
            put_table(&mut m, dir, "filter_argmax.csv", &filter_argmax_table())?;
            let att = attenuation_table();
            put_table(&mut m, dir, "attenuation.csv", &att)?;
            put_svg(&mut m, dir, "attenuation.svg", &filters::attenuation_series(&att), &filters::attenuation_axes())?;
        }
    }
    m.save(dir)?;
    match failure {
        Some(msg) => Err(LabError::Certification(msg)),
        None => Ok(m),
    }
}
