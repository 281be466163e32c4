//! Gaussian kernel ridge regression in dual coordinates.
//!
//! With `(σ_i, u_i)` the eigenpairs of `K/n`, a dual vector `α` stands for the
//! function `θ(x) = Σ_j α_j k(x_j, x)` whose coordinates on the train
//! eigenbasis are `√(nσ_i) ⟨α, u_i⟩`. `K_λ` denotes `K + nλI`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{Cholesky, Matrix};
use crate::math;
use crate::quadratic::{clamp_psd, from_kernel_eigen, QuadraticObjective};
use crate::spectral::{eig_sym, SymmetricEigen};

#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    points: Matrix,
    labels: Vec<f64>,
}

impl Dataset {
    /// Labels must be exactly `-1` or `+1`.
    pub fn new(points: Matrix, labels: Vec<f64>) -> Result<Self> {
        if points.nrows() == 0 || points.ncols() == 0 {
            return Err(Error::InvalidArgument("dataset needs at least one point and one feature"));
        }
        if labels.len() != points.nrows() {
            return Err(Error::DimensionMismatch { expected: points.nrows(), found: labels.len() });
        }
        if let Some((index, &value)) = labels.iter().enumerate().find(|(_, &l)| l != 1.0 && l != -1.0) {
            return Err(Error::InvalidLabel { index, value });
        }
        Ok(Dataset { points, labels })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.points.ncols()
    }

    pub fn points(&self) -> &Matrix {
        &self.points
    }

    pub fn point(&self, i: usize) -> &[f64] {
        self.points.row(i)
    }

    pub fn labels(&self) -> &[f64] {
        &self.labels
    }
}

/// `exp(−‖a − b‖² / (2s²))`.
pub fn gaussian_kernel(a: &[f64], b: &[f64], scale: f64) -> f64 {
    let d2: f64 = a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum();
    math::exp(-d2 / (2.0 * scale * scale))
}

pub fn gaussian_kernel_matrix(points: &Matrix, scale: f64) -> Result<Matrix> {
    if !(scale > 0.0) {
        return Err(Error::InvalidArgument("kernel scale must be positive"));
    }
    let n = points.nrows();
    let mut k = Matrix::identity(n);
    for i in 0..n {
        for j in (i + 1)..n {
            let v = gaussian_kernel(points.row(i), points.row(j), scale);
            k[(i, j)] = v;
            k[(j, i)] = v;
        }
    }
    Ok(k)
}

/// Solves `(K + nλI) α = y`.
pub fn ridge_alpha(k: &Matrix, y: &[f64], lambda: f64) -> Result<Vec<f64>> {
    if !k.is_square() {
        return Err(Error::NotSquare { rows: k.nrows(), cols: k.ncols() });
    }
    let n = k.nrows();
    Cholesky::factor(&k.shifted(n as f64 * lambda))?.solve(y)
}

/// The gradient step used on the dual coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DualMode {
    /// `α ← α − η (K/n)(K_λα − y)`: train-loss gradient taken with respect to `α`.
    TrainLoss,
    /// `α ← α − η (K_λα − y)`: gradient of the Hilbert-norm distance to `α*`.
    HilbertNorm,
    /// `α ← α − (η/n)(K_λα − y)`: the image of θ-space gradient descent on the
    /// train loss, with the same step size.
    Primal,
}

impl DualMode {
    pub fn as_str(self) -> &'static str {
        match self {
            DualMode::TrainLoss => "train_loss",
            DualMode::HilbertNorm => "hilbert_norm",
            DualMode::Primal => "primal",
        }
    }

    /// Per-step multiplier of `⟨α − α*, u_i⟩` for the eigenvalue `σ` of `K/n`.
    pub fn factor(self, eta: f64, sigma: f64, lambda: f64, n: usize) -> f64 {
        let nf = n as f64;
        match self {
            DualMode::TrainLoss => 1.0 - eta * nf * sigma * (sigma + lambda),
            DualMode::HilbertNorm => 1.0 - eta * nf * (sigma + lambda),
            DualMode::Primal => 1.0 - eta * (sigma + lambda),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DualState {
    pub alpha: Vec<f64>,
    pub mode: DualMode,
}

#[derive(Debug, Clone)]
pub struct KernelProblem {
    dataset: Dataset,
    scale: f64,
    lambda: f64,
    k: Matrix,
    kn: SymmetricEigen,
    objective: QuadraticObjective,
}

impl KernelProblem {
    pub fn new(dataset: Dataset, scale: f64, lambda: f64) -> Result<Self> {
        let k = gaussian_kernel_matrix(dataset.points(), scale)?;
        let n = dataset.len();
        let kn = clamp_psd(eig_sym(&k.scaled(1.0 / n as f64))?);
        let objective = from_kernel_eigen(&kn, dataset.labels(), lambda)?;
        Ok(KernelProblem { dataset, scale, lambda, k, kn, objective })
    }

    pub fn n(&self) -> usize {
        self.dataset.len()
    }

    pub fn dataset(&self) -> &Dataset {
        &self.dataset
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Bound on `√k(x, x)`; 1 for the Gaussian kernel.
    pub fn c_k(&self) -> f64 {
        1.0
    }

    pub fn kernel(&self) -> &Matrix {
        &self.k
    }

    /// Eigenpairs of `K/n`, negatives clamped to zero.
    pub fn eigen(&self) -> &SymmetricEigen {
        &self.kn
    }

    /// Train objective in the eigen-coordinates of `K/n`, operator `K/n + λI`.
    pub fn objective(&self) -> &QuadraticObjective {
        &self.objective
    }

    /// `α* = K_λ⁻¹ y` through a Cholesky solve.
    pub fn ridge_alpha(&self) -> Result<Vec<f64>> {
        ridge_alpha(&self.k, self.dataset.labels(), self.lambda)
    }

    /// `⟨α, u_i⟩` for every `i`.
    pub fn u_coords(&self, alpha: &[f64]) -> Result<Vec<f64>> {
        self.kn.vectors.tr_matvec(alpha)
    }

    /// `√(nσ_i) ⟨α, u_i⟩`.
    pub fn to_eigen_coords(&self, alpha: &[f64]) -> Result<Vec<f64>> {
        let nf = self.n() as f64;
        let d = self.u_coords(alpha)?;
        Ok(d.iter().zip(&self.kn.values).map(|(di, s)| math::sqrt(nf * s) * di).collect())
    }

    /// `K_λ α − y`.
    fn residual(&self, alpha: &[f64]) -> Result<Vec<f64>> {
        let shift = self.n() as f64 * self.lambda;
        let ka = self.k.matvec(alpha)?;
        Ok(ka.iter().zip(alpha).zip(self.dataset.labels()).map(|((k, a), y)| k + shift * a - y).collect())
    }

    pub fn gd_alpha(&self, state: &DualState, eta: f64) -> Result<DualState> {
        if !(eta > 0.0) {
            return Err(Error::InvalidArgument("step size must be positive"));
        }
        let n = self.n();
        if state.alpha.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: state.alpha.len() });
        }
        let r = self.residual(&state.alpha)?;
        let dir = match state.mode {
            DualMode::TrainLoss => self.k.matvec(&r)?.into_iter().map(|v| v * eta / n as f64).collect(),
            DualMode::HilbertNorm => r.into_iter().map(|v| v * eta).collect(),
            DualMode::Primal => r.into_iter().map(|v| v * eta / n as f64).collect::<Vec<_>>(),
        };
        let alpha = state.alpha.iter().zip(&dir).map(|(a, d)| a - d).collect();
        Ok(DualState { alpha, mode: state.mode })
    }

    /// `α_t` after `t` steps from `alpha0`, evaluated in the `u` basis.
    pub fn alpha_closed_form(&self, alpha0: &[f64], mode: DualMode, eta: f64, t: u64) -> Result<Vec<f64>> {
        let n = self.n();
        let nf = n as f64;
        let d0 = self.u_coords(alpha0)?;
        let yu = self.u_coords(self.dataset.labels())?;
        let mut d = Vec::with_capacity(n);
        for i in 0..n {
            let s = self.kn.values[i];
            let shifted = nf * (s + self.lambda);
            let target = if shifted > 0.0 { yu[i] / shifted } else { 0.0 };
            let f = mode.factor(eta, s, self.lambda, n);
            d.push(target + (d0[i] - target) * math::powi(f, t));
        }
        self.kn.vectors.matvec(&d)
    }

    /// `(α − β)ᵀ K (α − β)`, clamped at zero.
    pub fn hilbert_distance2(&self, alpha: &[f64], beta: &[f64]) -> Result<f64> {
        if alpha.len() != beta.len() {
            return Err(Error::DimensionMismatch { expected: alpha.len(), found: beta.len() });
        }
        let diff: Vec<f64> = alpha.iter().zip(beta).map(|(a, b)| a - b).collect();
        let kd = self.k.matvec(&diff)?;
        Ok(math::dot(&diff, &kd).max(0.0))
    }

    /// `Σ_j α_j k(x_j, x)`.
    pub fn predict(&self, alpha: &[f64], x: &[f64]) -> Result<f64> {
        if x.len() != self.dataset.dim() {
            return Err(Error::DimensionMismatch { expected: self.dataset.dim(), found: x.len() });
        }
        if alpha.len() != self.n() {
            return Err(Error::DimensionMismatch { expected: self.n(), found: alpha.len() });
        }
        Ok(alpha.iter().enumerate().map(|(j, a)| a * gaussian_kernel(self.dataset.point(j), x, self.scale)).sum())
    }

    /// Fraction of points with `sign(θ(x)) ≠ y`; a zero score counts as an error.
    pub fn binary_error(&self, alpha: &[f64], test: &Dataset) -> Result<f64> {
        if test.is_empty() {
            return Err(Error::EmptyTestSet);
        }
        let mut wrong = 0usize;
        for i in 0..test.len() {
            if self.predict(alpha, test.point(i))? * test.labels()[i] <= 0.0 {
                wrong += 1;
            }
        }
        Ok(wrong as f64 / test.len() as f64)
    }

    /// `‖α − α_ref‖_K ≤ δ / (2 C_K)`.
    pub fn margin_certificate(&self, alpha: &[f64], alpha_ref: &[f64], delta: f64) -> Result<bool> {
        Ok(math::sqrt(self.hilbert_distance2(alpha, alpha_ref)?) <= delta / (2.0 * self.c_k()))
    }

    /// Train loss `F` at `α` through its eigen-coordinates.
    pub fn train_loss(&self, alpha: &[f64]) -> Result<f64> {
        self.objective.eval(&self.to_eigen_coords(alpha)?)
    }
}
