//! The two-dimensional instance `F = ½(σ₁x² + σ₂y²)`, `R = ½(x² + y²)`, `θ₀ = (ι, ι)`.

use alloc::vec;

use crate::error::{Error, Result};
use crate::gd::{run_to_level_set, GdRun, StopStatus};
use crate::math;
use crate::quadratic::{ProblemPair, QuadraticObjective};
use crate::regime::{attenuation, classify_rate, RegimeKind};
use crate::spectral::Spectrum;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToyInstance {
    sigma1: f64,
    sigma2: f64,
    iota: f64,
}

/// Thresholds of the two-dimensional argument.
///
/// `t₁` bounds ε (`ε_s² ≤ σ₂/(2σ₁)` or `ε_b² ≤ ½`). `t₂` and `t₃` keep the
/// `ι` (not `ι²`) and the `4/3` factor of the original derivation, which puts
/// `t₃` below `t₂`; only `t₂ > t₁` is used as the feasibility test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToyThresholds {
    pub t1: f64,
    pub t2: f64,
    pub t3: f64,
}

impl ToyThresholds {
    pub fn feasible(&self) -> bool {
        self.t2 > self.t1
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ToyRatio {
    pub kappa: f64,
    pub run_s: GdRun,
    pub run_b: GdRun,
    pub test_s: f64,
    pub test_b: f64,
    /// `R(θ_s) / R(θ_b)`.
    pub ratio: f64,
    /// `ratio ≥ σ₁/σ₂`.
    pub passes: bool,
}

impl ToyInstance {
    pub fn new(sigma1: f64, sigma2: f64, iota: f64) -> Result<Self> {
        if !(sigma2 > 0.0) || !(sigma1 > sigma2) || !sigma1.is_finite() {
            return Err(Error::InvalidArgument("need sigma1 > sigma2 > 0"));
        }
        if !iota.is_finite() {
            return Err(Error::InvalidArgument("iota must be finite"));
        }
        Ok(ToyInstance { sigma1, sigma2, iota })
    }

    pub fn sigma1(&self) -> f64 {
        self.sigma1
    }

    pub fn sigma2(&self) -> f64 {
        self.sigma2
    }

    pub fn iota(&self) -> f64 {
        self.iota
    }

    pub fn kappa(&self) -> f64 {
        self.sigma1 / self.sigma2
    }

    pub fn spectrum(&self) -> Spectrum {
        Spectrum::diagonal(&[self.sigma1, self.sigma2]).expect("validated at construction")
    }

    pub fn theta0(&self) -> [f64; 2] {
        [self.iota, self.iota]
    }

    pub fn pair(&self) -> ProblemPair {
        let train = QuadraticObjective::new(self.spectrum(), vec![0.0, 0.0], 0.0).expect("valid");
        let test = QuadraticObjective::new(Spectrum::diagonal(&[1.0, 1.0]).expect("valid"), vec![0.0, 0.0], 0.0)
            .expect("valid");
        ProblemPair::new(train, test).expect("same dimension")
    }

    /// `((1 − ησ₁)^t ι, (1 − ησ₂)^t ι)`.
    pub fn trajectory(&self, eta: f64, t: u64) -> (f64, f64) {
        (
            math::powi(1.0 - eta * self.sigma1, t) * self.iota,
            math::powi(1.0 - eta * self.sigma2, t) * self.iota,
        )
    }

    pub fn train_loss(&self, x: f64, y: f64) -> f64 {
        0.5 * (self.sigma1 * x * x + self.sigma2 * y * y)
    }

    pub fn test_loss(x: f64, y: f64) -> f64 {
        0.5 * (x * x + y * y)
    }

    /// Small: `t₁ = ½ log(2σ₁/σ₂) / log(|A₂|/|A₁|)`, `t₂ = ½ log(α/(σ₂|ι|)) / log|A₂|`.
    /// Big: `t₁ = ½ log 2 / log(|A₁|/|A₂|)`, `t₂ = ½ log(α/(σ₁|ι|)) / log|A₁|`.
    /// `t₃` is `t₂` with `α` replaced by `4α/3`.
    pub fn thresholds(&self, eta: f64, alpha: f64, regime: RegimeKind) -> Result<ToyThresholds> {
        if !(alpha > 0.0) {
            return Err(Error::InvalidArgument("alpha must be positive"));
        }
        let kind = classify_rate(eta, &self.spectrum()).kind;
        if kind != regime || !matches!(kind, RegimeKind::Small | RegimeKind::Big) {
            return Err(Error::WrongRegime);
        }
        let a1 = attenuation(eta, self.sigma1);
        let a2 = attenuation(eta, self.sigma2);
        let iota = math::abs(self.iota);
        let (t1, sigma, lead) = match kind {
            RegimeKind::Small => (0.5 * math::ln(2.0 * self.kappa()) / math::ln(a2 / a1), self.sigma2, a2),
            _ => (0.5 * math::ln(2.0) / math::ln(a1 / a2), self.sigma1, a1),
        };
        let t2 = 0.5 * math::ln(alpha / (sigma * iota)) / math::ln(lead);
        let t3 = 0.5 * math::ln(4.0 / 3.0 * alpha / (sigma * iota)) / math::ln(lead);
        Ok(ToyThresholds { t1, t2, t3 })
    }

    /// Runs both rates to the `α` level set and compares the test losses against `σ₁/σ₂`.
    pub fn ratio_check(&self, eta_s: f64, eta_b: f64, alpha: f64, t_max: u64) -> Result<ToyRatio> {
        let ws = self.thresholds(eta_s, alpha, RegimeKind::Small)?;
        let wb = self.thresholds(eta_b, alpha, RegimeKind::Big)?;
        if !ws.feasible() || !wb.feasible() {
            return Err(Error::InfeasibleWindow);
        }
        let pair = self.pair();
        let theta0 = self.theta0();
        let run_s = run_to_level_set(pair.train(), &theta0, eta_s, alpha, t_max)?;
        let run_b = run_to_level_set(pair.train(), &theta0, eta_b, alpha, t_max)?;
        if run_s.stop_status != StopStatus::HitLevelSet || run_b.stop_status != StopStatus::HitLevelSet {
            return Err(Error::InfeasibleWindow);
        }
        let test_s = Self::test_loss(run_s.theta[0], run_s.theta[1]);
        let test_b = Self::test_loss(run_b.theta[0], run_b.theta[1]);
        let ratio = test_s / test_b;
        let kappa = self.kappa();
        Ok(ToyRatio { kappa, run_s, run_b, test_s, test_b, ratio, passes: ratio >= kappa })
    }
}
