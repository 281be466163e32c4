//! Gradient descent on a quadratic, iterative and in closed form.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math;
use crate::quadratic::QuadraticObjective;

/// A run is declared divergent once the excess loss exceeds this multiple of its start value.
pub const DIVERGENCE_FACTOR: f64 = 1e12;

/// Runs longer than this keep only every [`TRACE_DECIMATION`]-th loss.
pub const TRACE_FULL_LIMIT: u64 = 1_000_000;
pub const TRACE_DECIMATION: u64 = 1_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StopStatus {
    /// Fixed-length run with no stopping rule.
    Completed,
    HitLevelSet,
    MaxStepsExceeded,
    Diverged,
}

impl StopStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            StopStatus::Completed => "completed",
            StopStatus::HitLevelSet => "hit_level_set",
            StopStatus::MaxStepsExceeded => "max_steps_exceeded",
            StopStatus::Diverged => "diverged",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GdRun {
    pub eta: f64,
    pub steps: u64,
    /// Initial eigen-coordinates `ι_i`.
    pub iota: Vec<f64>,
    /// Final eigen-coordinates `μ_i`.
    pub mu: Vec<f64>,
    /// Excess train loss, starting at `t = 0`. See [`GdRun::trace_stride`].
    pub loss_trace: Vec<f64>,
    /// Steps between consecutive trace entries past [`TRACE_FULL_LIMIT`].
    pub trace_stride: u64,
    pub stop_status: StopStatus,
    pub theta: Vec<f64>,
    /// Level-set target, for runs with a stopping rule.
    pub alpha: Option<f64>,
}

impl GdRun {
    pub fn final_excess(&self) -> f64 {
        *self.loss_trace.last().expect("trace always holds the initial loss")
    }

    /// Whether the stopped run satisfies `α/2 ≤ excess ≤ α`.
    pub fn half_level_ok(&self) -> Option<bool> {
        let alpha = self.alpha?;
        let e = self.final_excess();
        Some(self.stop_status == StopStatus::HitLevelSet && e >= alpha / 2.0 && e <= alpha)
    }
}

fn check_eta(eta: f64) -> Result<()> {
    if !(eta > 0.0) || !eta.is_finite() {
        return Err(Error::InvalidArgument("step size must be positive and finite"));
    }
    Ok(())
}

/// `θ − η ∇F(θ)`.
pub fn step(obj: &QuadraticObjective, theta: &[f64], eta: f64) -> Result<Vec<f64>> {
    check_eta(eta)?;
    let g = obj.grad(theta)?;
    Ok(theta.iter().zip(&g).map(|(x, gi)| x - eta * gi).collect())
}

/// `μ_i = ⟨θ − θ*, e_i⟩`.
pub fn decompose(obj: &QuadraticObjective, theta: &[f64]) -> Result<Vec<f64>> {
    obj.coefficients(theta)
}

/// Exact iterate after `t` steps, `μ_i = ι_i (1 − ησ_i)^t`.
///
/// The loss trace holds every step up to [`TRACE_FULL_LIMIT`], otherwise only the endpoints.
pub fn closed_form(obj: &QuadraticObjective, theta0: &[f64], eta: f64, t: u64) -> Result<GdRun> {
    check_eta(eta)?;
    let iota = decompose(obj, theta0)?;
    let factors: Vec<f64> = obj.spectrum().eigenvalues().iter().map(|s| 1.0 - eta * s).collect();
    let at = |k: u64| -> Vec<f64> {
        iota.iter().zip(&factors).map(|(i, f)| i * math::powi(*f, k)).collect()
    };
    let (loss_trace, stride) = if t <= TRACE_FULL_LIMIT {
        let mut mu = iota.clone();
        let mut trace = Vec::with_capacity(t as usize + 1);
        trace.push(obj.excess_from_coefficients(&mu));
        for _ in 0..t {
            for (m, f) in mu.iter_mut().zip(&factors) {
                *m *= f;
            }
            trace.push(obj.excess_from_coefficients(&mu));
        }
        let last = trace.len() - 1;
        trace[last] = obj.excess_from_coefficients(&at(t));
        (trace, 1)
    } else {
        let trace = vec![obj.excess_from_coefficients(&iota), obj.excess_from_coefficients(&at(t))];
        (trace, t)
    };
    let mu = at(t);
    let theta = obj.point_from_coefficients(&mu)?;
    Ok(GdRun {
        eta,
        steps: t,
        iota,
        mu,
        loss_trace,
        trace_stride: stride,
        stop_status: StopStatus::Completed,
        theta,
        alpha: None,
    })
}

/// Runs GD until the excess train loss is at most `alpha`.
///
/// Iterates in eigen-coordinates, one multiply per coordinate per step.
/// Ties at exactly `alpha` count as a hit. The half-level condition is
/// reported through [`GdRun::half_level_ok`], not enforced.
pub fn run_to_level_set(
    obj: &QuadraticObjective,
    theta0: &[f64],
    eta: f64,
    alpha: f64,
    t_max: u64,
) -> Result<GdRun> {
    check_eta(eta)?;
    if !(alpha > 0.0) {
        return Err(Error::InvalidArgument("alpha must be positive"));
    }
    if t_max == 0 {
        return Err(Error::InvalidArgument("t_max must be at least 1"));
    }
    let iota = decompose(obj, theta0)?;
    let initial = obj.excess_from_coefficients(&iota);
    if initial <= alpha {
        return Err(Error::AlreadyBelowLevelSet { excess: initial, alpha });
    }
    let factors: Vec<f64> = obj.spectrum().eigenvalues().iter().map(|s| 1.0 - eta * s).collect();
    let mut mu = iota.clone();
    let mut trace = vec![initial];
    let mut status = StopStatus::MaxStepsExceeded;
    let mut t = 0u64;
    let mut pushed = true;
    while t < t_max {
        for (m, f) in mu.iter_mut().zip(&factors) {
            *m *= f;
        }
        t += 1;
        let loss = obj.excess_from_coefficients(&mu);
        if loss <= alpha {
            status = StopStatus::HitLevelSet;
        } else if !(loss <= DIVERGENCE_FACTOR * initial) {
            status = StopStatus::Diverged;
        }
        let done = status != StopStatus::MaxStepsExceeded;
        pushed = done || t <= TRACE_FULL_LIMIT || t.is_multiple_of(TRACE_DECIMATION);
        if pushed {
            trace.push(loss);
        }
        if done {
            break;
        }
    }
    if !pushed {
        trace.push(obj.excess_from_coefficients(&mu));
    }
    let theta = obj.point_from_coefficients(&mu)?;
    Ok(GdRun {
        eta,
        steps: t,
        iota,
        mu,
        loss_trace: trace,
        trace_stride: if t > TRACE_FULL_LIMIT { TRACE_DECIMATION } else { 1 },
        stop_status: status,
        theta,
        alpha: Some(alpha),
    })
}
