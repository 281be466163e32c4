//! Residuals `r(σ) = |1 − σ g(σ)|` of classical spectral filters.

use crate::error::{Error, Result};
use crate::math;
use crate::spectral::Spectrum;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FilterSpec {
    /// Keeps components with `σ ≥ λ`.
    CutOff { lambda: f64 },
    /// `t` steps of gradient descent with step `η`.
    Gd { eta: f64, t: u64 },
    Tikhonov { lambda: f64 },
    IteratedTikhonov { eta: f64, t: u64 },
}

impl FilterSpec {
    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            FilterSpec::CutOff { lambda } | FilterSpec::Tikhonov { lambda } => lambda > 0.0 && lambda.is_finite(),
            FilterSpec::Gd { eta, .. } | FilterSpec::IteratedTikhonov { eta, .. } => eta > 0.0 && eta.is_finite(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidArgument("filter parameter must be positive and finite"))
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            FilterSpec::CutOff { .. } => "cutoff",
            FilterSpec::Gd { .. } => "gd",
            FilterSpec::Tikhonov { .. } => "tikhonov",
            FilterSpec::IteratedTikhonov { .. } => "iterated_tikhonov",
        }
    }

    /// CutOff: `1` if `σ < λ` else `0`. GD: `|1 − ησ|^t`. Tikhonov: `λ/(σ + λ)`.
    /// Iterated Tikhonov: `(1 + ησ)^{−t}`.
    pub fn residual(&self, sigma: f64) -> f64 {
        match *self {
            FilterSpec::CutOff { lambda } => {
                if sigma < lambda {
                    1.0
                } else {
                    0.0
                }
            }
            FilterSpec::Gd { eta, t } => math::powi(math::abs(1.0 - eta * sigma), t),
            FilterSpec::Tikhonov { lambda } => lambda / (sigma + lambda),
            FilterSpec::IteratedTikhonov { eta, t } => math::powi(1.0 / (1.0 + eta * sigma), t),
        }
    }

    /// 0-based index of the eigenvalue with the largest residual, ties toward the smaller index.
    pub fn residual_argmax(&self, spectrum: &Spectrum) -> usize {
        let mut best = 0;
        let mut best_value = f64::NEG_INFINITY;
        for (i, &s) in spectrum.eigenvalues().iter().enumerate() {
            let r = self.residual(s);
            if r > best_value {
                best = i;
                best_value = r;
            }
        }
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residual_examples() {
        assert_eq!(FilterSpec::Tikhonov { lambda: 0.25 }.residual(0.25), 0.5);
        assert_eq!(FilterSpec::Gd { eta: 2.0, t: 4 }.residual(0.5), 0.0);
        assert!((FilterSpec::Gd { eta: 1.0, t: 4 }.residual(0.25) - 0.31640625).abs() < 1e-15);
        assert_eq!(FilterSpec::CutOff { lambda: 0.25 }.residual(0.25), 0.0);
        assert_eq!(FilterSpec::CutOff { lambda: 0.25 }.residual(0.2), 1.0);
        assert_eq!(FilterSpec::IteratedTikhonov { eta: 0.8, t: 0 }.residual(3.0), 1.0);
    }

    #[test]
    fn argmax_examples() {
        let s = Spectrum::diagonal(&[1.0, 0.9, 0.3, 0.2]).unwrap();
        assert_eq!(FilterSpec::CutOff { lambda: 0.1 }.residual_argmax(&s), 0);
        assert_eq!(FilterSpec::Gd { eta: 1.98, t: 10 }.residual_argmax(&s), 0);
        assert_eq!(FilterSpec::Tikhonov { lambda: 0.3 }.residual_argmax(&s), 3);
        assert_eq!(FilterSpec::Gd { eta: 1.0, t: 10 }.residual_argmax(&s), 3);
    }

    #[test]
    fn validation() {
        assert!(FilterSpec::Tikhonov { lambda: 0.0 }.validate().is_err());
        assert!(FilterSpec::Gd { eta: 1.0, t: 0 }.validate().is_ok());
    }
}
