//! Quadratic train and test objectives `½‖θ − θ*‖²_T + m`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::math;
use crate::spectral::{eig_sym, Spectrum, SymmetricEigen};

/// `F(θ) = ½ (θ − θ*)ᵀ T (θ − θ*) + m` with `T` given by its spectrum.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticObjective {
    spectrum: Spectrum,
    optimum: Vec<f64>,
    min_value: f64,
}

impl QuadraticObjective {
    pub fn new(spectrum: Spectrum, optimum: Vec<f64>, min_value: f64) -> Result<Self> {
        if optimum.len() != spectrum.dim() {
            return Err(Error::DimensionMismatch { expected: spectrum.dim(), found: optimum.len() });
        }
        if !(min_value >= 0.0) || !min_value.is_finite() {
            return Err(Error::InvalidArgument("min_value must be finite and nonnegative"));
        }
        Ok(QuadraticObjective { spectrum, optimum, min_value })
    }

    pub fn dim(&self) -> usize {
        self.optimum.len()
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    pub fn optimum(&self) -> &[f64] {
        &self.optimum
    }

    pub fn min_value(&self) -> f64 {
        self.min_value
    }

    fn check(&self, theta: &[f64]) -> Result<()> {
        if theta.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: theta.len() });
        }
        Ok(())
    }

    /// Eigen-coordinates `μ_i = ⟨θ − θ*, e_i⟩`.
    pub fn coefficients(&self, theta: &[f64]) -> Result<Vec<f64>> {
        self.check(theta)?;
        let diff: Vec<f64> = theta.iter().zip(&self.optimum).map(|(a, b)| a - b).collect();
        self.spectrum.project(&diff)
    }

    /// `½ Σ σ_i μ_i²` from eigen-coordinates.
    pub fn excess_from_coefficients(&self, mu: &[f64]) -> f64 {
        0.5 * self.spectrum.eigenvalues().iter().zip(mu).map(|(s, m)| s * m * m).sum::<f64>()
    }

    pub fn eval(&self, theta: &[f64]) -> Result<f64> {
        Ok(self.excess(theta)? + self.min_value)
    }

    /// `eval(θ) − min_value`.
    pub fn excess(&self, theta: &[f64]) -> Result<f64> {
        let mu = self.coefficients(theta)?;
        Ok(self.excess_from_coefficients(&mu))
    }

    /// `T (θ − θ*)`.
    pub fn grad(&self, theta: &[f64]) -> Result<Vec<f64>> {
        let mut mu = self.coefficients(theta)?;
        for (m, s) in mu.iter_mut().zip(self.spectrum.eigenvalues()) {
            *m *= s;
        }
        self.spectrum.expand(&mu)
    }

    /// `θ* + Σ μ_i e_i`.
    pub fn point_from_coefficients(&self, mu: &[f64]) -> Result<Vec<f64>> {
        let d = self.spectrum.expand(mu)?;
        Ok(d.iter().zip(&self.optimum).map(|(a, b)| a + b).collect())
    }

    fn rescaled(&self, factor: f64) -> Result<Self> {
        Ok(QuadraticObjective {
            spectrum: self.spectrum.scaled(factor)?,
            optimum: self.optimum.clone(),
            min_value: self.min_value * factor,
        })
    }
}

/// Kernel ridge objective in the eigen-coordinates of `K/n`.
///
/// The operator is `K/n + λI`, its optimum has coordinates
/// `√(nσ_i) ⟨y, u_i⟩ / (n(σ_i + λ))` and the minimum is
/// `(1/2n) yᵀ[I − (K/n)(K/n + λ)⁻¹] y`.
pub fn from_kernel(k: &Matrix, y: &[f64], lambda: f64) -> Result<QuadraticObjective> {
    if !k.is_square() {
        return Err(Error::NotSquare { rows: k.nrows(), cols: k.ncols() });
    }
    let n = k.nrows();
    let eig = eig_sym(&k.scaled(1.0 / n as f64))?;
    from_kernel_eigen(&clamp_psd(eig), y, lambda)
}

/// Clamps the rounding-level negative eigenvalues of a PSD matrix to zero.
pub(crate) fn clamp_psd(mut eig: SymmetricEigen) -> SymmetricEigen {
    for v in eig.values.iter_mut() {
        if *v < 0.0 {
            *v = 0.0;
        }
    }
    eig
}

/// Same as [`from_kernel`] from an existing decomposition of `K/n`.
pub fn from_kernel_eigen(kn: &SymmetricEigen, y: &[f64], lambda: f64) -> Result<QuadraticObjective> {
    let n = kn.dim();
    if y.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: y.len() });
    }
    if !(lambda >= 0.0) || !lambda.is_finite() {
        return Err(Error::InvalidArgument("lambda must be finite and nonnegative"));
    }
    let top = kn.values[0];
    let bottom = kn.values[n - 1];
    if !(top > 0.0) || (lambda == 0.0 && bottom < 1e-12 * top) {
        return Err(Error::SingularKernel { smallest: bottom * n as f64 });
    }
    let nf = n as f64;
    let yu = kn.vectors.tr_matvec(y)?;
    let mut optimum = Vec::with_capacity(n);
    let mut min_value = 0.0;
    for (&s, &c) in kn.values.iter().zip(&yu) {
        let shifted = s + lambda;
        optimum.push(math::sqrt(nf * s) * c / (nf * shifted));
        min_value += lambda / shifted * c * c;
    }
    min_value /= 2.0 * nf;
    let eigenvalues = kn.values.iter().map(|s| s + lambda).collect();
    let spectrum = Spectrum::new(eigenvalues, Matrix::identity(n))?;
    QuadraticObjective::new(spectrum, optimum, min_value)
}

/// Train objective `F` and test objective `R` sharing one coordinate system.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemPair {
    train: QuadraticObjective,
    test: QuadraticObjective,
}

impl ProblemPair {
    /// The test objective must have minimum 0.
    pub fn new(train: QuadraticObjective, test: QuadraticObjective) -> Result<Self> {
        if train.dim() != test.dim() {
            return Err(Error::DimensionMismatch { expected: train.dim(), found: test.dim() });
        }
        if test.min_value() != 0.0 {
            return Err(Error::InvalidArgument("test objective must have minimum 0"));
        }
        Ok(ProblemPair { train, test })
    }

    pub fn train(&self) -> &QuadraticObjective {
        &self.train
    }

    pub fn test(&self) -> &QuadraticObjective {
        &self.test
    }

    pub fn dim(&self) -> usize {
        self.train.dim()
    }

    pub fn kappa_train(&self) -> f64 {
        self.train.spectrum().condition_number()
    }

    pub fn kappa_test(&self) -> f64 {
        self.test.spectrum().condition_number()
    }

    /// `R(θ̂*)`, the test loss of the train optimum.
    pub fn model_error(&self) -> f64 {
        self.test.eval(self.train.optimum()).expect("dimensions checked at construction")
    }

    /// Rescales both operators so their top eigenvalue is 1.
    pub fn normalize(&self) -> Result<Self> {
        let ft = 1.0 / self.train.spectrum().largest();
        let fr = 1.0 / self.test.spectrum().largest();
        Ok(ProblemPair { train: self.train.rescaled(ft)?, test: self.test.rescaled(fr)? })
    }
}
