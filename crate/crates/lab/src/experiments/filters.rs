use stepbias_core::regime::attenuation;
use stepbias_core::{FilterSpec, Spectrum};

use super::f;
use crate::csvio::Table;
use crate::svg::{Axes, Series};

/// The five filters of the residual comparison: `λ = 1/4`, GD with four steps
/// at `η ∈ {1, 2}` and iterated Tikhonov with `η = 4/5`, `t = 5`.
pub const FIG5_FILTERS: [(&str, FilterSpec); 5] = [
    ("cutoff", FilterSpec::CutOff { lambda: 0.25 }),
    ("gd_small", FilterSpec::Gd { eta: 1.0, t: 4 }),
    ("gd_big", FilterSpec::Gd { eta: 2.0, t: 4 }),
    ("tikhonov", FilterSpec::Tikhonov { lambda: 0.25 }),
    ("iterated_tikhonov", FilterSpec::IteratedTikhonov { eta: 0.8, t: 5 }),
];

/// Spectrum used for the attenuation curves and the argmax table.
pub const ATTENUATION_SPECTRUM: [f64; 4] = [1.0, 0.9, 0.3, 0.2];

/// Residuals at `σ_k = 1.1 (k + 1)/100`, `k = 0..100`.
pub fn filter_residuals() -> Table {
    let mut t = Table::new(["sigma"].into_iter().chain(FIG5_FILTERS.iter().map(|(n, _)| *n)));
    for k in 0..100 {
        let sigma = 1.1 * (k + 1) as f64 / 100.0;
        let mut row = vec![f(sigma)];
        row.extend(FIG5_FILTERS.iter().map(|(_, spec)| f(spec.residual(sigma))));
        t.push(row);
    }
    t
}

/// 0-based argmax of each residual over the four-point spectrum, plus GD at `0.99·2/σ₁` for ten steps.
pub fn filter_argmax_table() -> Table {
    let s = Spectrum::diagonal(&ATTENUATION_SPECTRUM).expect("valid spectrum");
    let mut specs: Vec<(&str, FilterSpec)> = FIG5_FILTERS.to_vec();
    specs.push(("gd_near_divergence", FilterSpec::Gd { eta: 0.99 * 2.0, t: 10 }));
    let mut t = Table::new(["filter", "argmax", "sigma_at_argmax", "residual_at_argmax"]);
    for (name, spec) in specs {
        let i = spec.residual_argmax(&s);
        let sigma = s.eigenvalues()[i];
        t.push(vec![name.to_string(), i.to_string(), f(sigma), f(spec.residual(sigma))]);
    }
    t
}

/// `|1 − ησ_i|` for `η` on 211 points of `[0, 2.1]`.
pub fn attenuation_table() -> Table {
    let mut t = Table::new(["eta"].into_iter().map(String::from).chain((1..=4).map(|i| format!("sigma_{i}"))));
    for k in 0..=210 {
        let eta = k as f64 / 100.0;
        let mut row = vec![f(eta)];
        row.extend(ATTENUATION_SPECTRUM.iter().map(|&s| f(attenuation(eta, s))));
        t.push(row);
    }
    t
}

fn columns_as_series(t: &Table, labels: impl Fn(&str) -> String) -> Vec<Series> {
    let x = t.floats(&t.header[0]).expect("numeric table");
    t.header[1..]
        .iter()
        .map(|name| {
            let y = t.floats(name).expect("numeric table");
            Series::new(labels(name), x.iter().copied().zip(y).collect())
        })
        .collect()
}

pub(super) fn residual_series(t: &Table) -> Vec<Series> {
    columns_as_series(t, |n| n.to_string())
}

pub(super) fn residual_axes() -> Axes {
    Axes {
        title: "Residual of spectral filters".into(),
        x_label: "sigma".into(),
        y_label: "residual".into(),
        ..Axes::default()
    }
}

pub(super) fn attenuation_series(t: &Table) -> Vec<Series> {
    let values = ATTENUATION_SPECTRUM;
    columns_as_series(t, |n| {
        let i: usize = n.trim_start_matches("sigma_").parse().expect("sigma_i column");
        format!("sigma = {}", f(values[i - 1]))
    })
}

pub(super) fn attenuation_axes() -> Axes {
    let s = ATTENUATION_SPECTRUM;
    Axes {
        title: "Attenuation |1 - eta sigma_i|".into(),
        x_label: "eta".into(),
        y_label: "attenuation".into(),
        log_y: false,
        guides: vec![(2.0 / (s[0] + s[3]), "2/(s1+sn)".into()), (2.0 / s[0], "2/s1".into())],
    }
}
