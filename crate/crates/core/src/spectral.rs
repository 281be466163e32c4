//! Symmetric eigendecomposition by cyclic Jacobi rotations, and the
//! [`Spectrum`] of a positive-definite operator.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::math;

/// Relative tolerance on `|a_ij - a_ji|` accepted as symmetric.
pub const SYMMETRY_TOL: f64 = 1e-12;
/// Two eigenvalues closer than this (relative) are reported as degenerate.
pub const DEGENERACY_TOL: f64 = 1e-10;
/// Jacobi stops once the off-diagonal Frobenius norm is below this fraction of `‖A‖_F`.
pub const JACOBI_TOL: f64 = 1e-12;
const MAX_SWEEPS: usize = 100;

/// Eigenpairs of a real symmetric matrix, eigenvalues sorted descending.
///
/// Column `i` of `vectors` pairs with `values[i]`. Each eigenvector has its
/// largest-magnitude entry made positive so decompositions are reproducible.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricEigen {
    pub values: Vec<f64>,
    pub vectors: Matrix,
}

impl SymmetricEigen {
    /// True when two consecutive eigenvalues are within [`DEGENERACY_TOL`] relative.
    pub fn is_degenerate(&self) -> bool {
        has_repeated(&self.values)
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }
}

fn has_repeated(values: &[f64]) -> bool {
    values.windows(2).any(|w| {
        let scale = math::abs(w[0]).max(math::abs(w[1]));
        math::abs(w[0] - w[1]) <= DEGENERACY_TOL * scale
    })
}

/// Eigendecomposition of a symmetric matrix.
pub fn eig_sym(a: &Matrix) -> Result<SymmetricEigen> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.nrows(), cols: a.ncols() });
    }
    let n = a.nrows();
    if n == 0 {
        return Err(Error::InvalidArgument("empty matrix"));
    }
    let asym = a.max_asymmetry();
    if asym > SYMMETRY_TOL * a.max_abs().max(f64::MIN_POSITIVE) {
        return Err(Error::NotSymmetric { max_asymmetry: asym });
    }

    // Work on the symmetrized copy so tiny asymmetries cannot bias rotations.
    let mut w = Matrix::from_fn(n, n, |i, j| 0.5 * (a[(i, j)] + a[(j, i)]));
    let mut v = Matrix::identity(n);
    let target = JACOBI_TOL * w.frobenius();

    let mut sweeps = 0;
    loop {
        if off_diagonal_norm(&w) <= target {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut w, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| w[(j, j)].total_cmp(&w[(i, i)]));
    let values: Vec<f64> = order.iter().map(|&i| w[(i, i)]).collect();
    let mut vectors = Matrix::zeros(n, n);
    for (col, &src) in order.iter().enumerate() {
        let mut pivot = 0;
        for r in 0..n {
            if math::abs(v[(r, src)]) > math::abs(v[(pivot, src)]) {
                pivot = r;
            }
        }
        let sign = if v[(pivot, src)] < 0.0 { -1.0 } else { 1.0 };
        for r in 0..n {
            vectors[(r, col)] = sign * v[(r, src)];
        }
    }
    Ok(SymmetricEigen { values, vectors })
}

fn off_diagonal_norm(w: &Matrix) -> f64 {
    let n = w.nrows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += w[(i, j)] * w[(i, j)];
            }
        }
    }
    math::sqrt(s)
}

/// One Jacobi rotation zeroing `w[p][q]`, accumulated into `v`.
fn rotate(w: &mut Matrix, v: &mut Matrix, p: usize, q: usize) {
    let apq = w[(p, q)];
    if apq == 0.0 {
        return;
    }
    let app = w[(p, p)];
    let aqq = w[(q, q)];
    let theta = (aqq - app) / (2.0 * apq);
    let t = {
        let r = math::hypot(theta, 1.0);
        let t = 1.0 / (math::abs(theta) + r);
        if theta < 0.0 {
            -t
        } else {
            t
        }
    };
    let c = 1.0 / math::hypot(t, 1.0);
    let s = t * c;
    let n = w.nrows();

    for k in 0..n {
        let wkp = w[(k, p)];
        let wkq = w[(k, q)];
        w[(k, p)] = c * wkp - s * wkq;
        w[(k, q)] = s * wkp + c * wkq;
    }
    for k in 0..n {
        let wpk = w[(p, k)];
        let wqk = w[(q, k)];
        w[(p, k)] = c * wpk - s * wqk;
        w[(q, k)] = s * wpk + c * wqk;
    }
    w[(p, q)] = 0.0;
    w[(q, p)] = 0.0;

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = c * vkp - s * vkq;
        v[(k, q)] = s * vkp + c * vkq;
    }
}

/// Ordered strictly positive eigenvalues with an orthonormal eigenbasis.
///
/// Eigenvalues are non-increasing. Exactly repeated eigenvalues are allowed
/// and flagged by [`Spectrum::is_degenerate`]; the certificate refuses them,
/// the simulations do not.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
    eigenvectors: Matrix,
}

impl Spectrum {
    /// Validates ordering, positivity and orthonormality (`‖QᵀQ − I‖_max ≤ 1e-10`).
    pub fn new(eigenvalues: Vec<f64>, eigenvectors: Matrix) -> Result<Self> {
        let n = eigenvalues.len();
        if n == 0 {
            return Err(Error::InvalidArgument("empty spectrum"));
        }
        if eigenvectors.nrows() != n || eigenvectors.ncols() != n {
            return Err(Error::DimensionMismatch { expected: n, found: eigenvectors.ncols() });
        }
        if let Some(&bad) = eigenvalues.iter().find(|&&s| !(s > 0.0) || !s.is_finite()) {
            return Err(Error::NotPositiveDefinite { eigenvalue: bad });
        }
        if eigenvalues.windows(2).any(|w| w[1] > w[0]) {
            return Err(Error::InvalidArgument("eigenvalues must be sorted descending"));
        }
        let gram = eigenvectors.transpose().matmul(&eigenvectors)?;
        if gram.max_abs_diff(&Matrix::identity(n)) > 1e-10 {
            return Err(Error::InvalidArgument("eigenvectors are not orthonormal"));
        }
        Ok(Spectrum { eigenvalues, eigenvectors })
    }

    /// Diagonal operator in the canonical basis.
    pub fn diagonal(eigenvalues: &[f64]) -> Result<Self> {
        Self::new(eigenvalues.to_vec(), Matrix::identity(eigenvalues.len()))
    }

    /// Spectrum of a symmetric positive-definite matrix.
    pub fn from_symmetric(a: &Matrix) -> Result<Self> {
        Self::from_eigen(eig_sym(a)?)
    }

    pub fn from_eigen(eig: SymmetricEigen) -> Result<Self> {
        if let Some(&last) = eig.values.last() {
            if !(last > 0.0) {
                return Err(Error::NotPositiveDefinite { eigenvalue: last });
            }
        }
        Ok(Spectrum { eigenvalues: eig.values, eigenvectors: eig.vectors })
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &Matrix {
        &self.eigenvectors
    }

    pub fn eigenvector(&self, i: usize) -> Vec<f64> {
        self.eigenvectors.column(i)
    }

    /// σ₁.
    pub fn largest(&self) -> f64 {
        self.eigenvalues[0]
    }

    /// σₙ.
    pub fn smallest(&self) -> f64 {
        self.eigenvalues[self.dim() - 1]
    }

    pub fn condition_number(&self) -> f64 {
        self.largest() / self.smallest()
    }

    pub fn is_degenerate(&self) -> bool {
        has_repeated(&self.eigenvalues)
    }

    /// Coordinates of `v` in the eigenbasis, `Qᵀv`.
    pub fn project(&self, v: &[f64]) -> Result<Vec<f64>> {
        self.eigenvectors.tr_matvec(v)
    }

    /// Inverse of [`Spectrum::project`], `Qc`.
    pub fn expand(&self, coeffs: &[f64]) -> Result<Vec<f64>> {
        self.eigenvectors.matvec(coeffs)
    }

    /// `Q diag(σ) Qᵀ`.
    pub fn reconstruct(&self) -> Matrix {
        let n = self.dim();
        let q = &self.eigenvectors;
        Matrix::from_fn(n, n, |i, j| (0..n).map(|k| q[(i, k)] * self.eigenvalues[k] * q[(j, k)]).sum())
    }

    /// Same eigenbasis, eigenvalues multiplied by `factor > 0`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        if !(factor > 0.0) {
            return Err(Error::InvalidArgument("scale factor must be positive"));
        }
        Ok(Spectrum {
            eigenvalues: self.eigenvalues.iter().map(|s| s * factor).collect(),
            eigenvectors: self.eigenvectors.clone(),
        })
    }
}

/// σ₁/σₙ of a spectrum.
pub fn condition_number(s: &Spectrum) -> f64 {
    s.condition_number()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn rotation(n: usize, p: usize, q: usize, angle: f64) -> Matrix {
        let mut r = Matrix::identity(n);
        let (s, c) = (libm::sin(angle), libm::cos(angle));
        r[(p, p)] = c;
        r[(q, q)] = c;
        r[(p, q)] = -s;
        r[(q, p)] = s;
        r
    }

    #[test]
    fn identity_is_flagged_degenerate() {
        let eig = eig_sym(&Matrix::identity(3)).unwrap();
        assert_eq!(eig.values, vec![1.0, 1.0, 1.0]);
        assert!(eig.is_degenerate());
        let s = Spectrum::from_eigen(eig).unwrap();
        assert_eq!(s.condition_number(), 1.0);
    }

    #[test]
    fn diagonal_matrix_recovers_canonical_basis() {
        let a = Matrix::from_diagonal(&[0.3, 1.0, 0.2, 0.9]);
        let eig = eig_sym(&a).unwrap();
        assert_eq!(eig.values, vec![1.0, 0.9, 0.3, 0.2]);
        assert!(!eig.is_degenerate());
        let expected_rows = [1, 3, 0, 2];
        for (col, &row) in expected_rows.iter().enumerate() {
            for r in 0..4 {
                let want = if r == row { 1.0 } else { 0.0 };
                assert_eq!(eig.vectors[(r, col)], want);
            }
        }
        let s = Spectrum::from_eigen(eig).unwrap();
        assert!((s.condition_number() - 5.0).abs() < 1e-15);
    }

    #[test]
    fn recovers_known_diagonal_under_rotation() {
        let d = [2.5, 1.25, 0.7, 0.31, 0.02];
        let mut q = Matrix::identity(5);
        for (k, &(p, r, ang)) in [(0, 1, 0.3), (1, 3, -1.1), (2, 4, 0.77), (0, 4, 2.0), (3, 2, 0.5)].iter().enumerate() {
            q = q.matmul(&rotation(5, p, r, ang + k as f64 * 0.01)).unwrap();
        }
        let a = q.matmul(&Matrix::from_diagonal(&d)).unwrap().matmul(&q.transpose()).unwrap();
        let s = Spectrum::from_symmetric(&a).unwrap();
        for (got, want) in s.eigenvalues().iter().zip(&d) {
            assert!((got - want).abs() < 1e-8, "{got} vs {want}");
        }
        assert!(s.reconstruct().max_abs_diff(&a) <= 1e-8 * s.largest());
    }

    #[test]
    fn rejects_asymmetric_and_indefinite() {
        let a = Matrix::from_rows(&[&[1.0, 2.0], &[0.0, 1.0]]).unwrap();
        assert!(matches!(eig_sym(&a), Err(Error::NotSymmetric { .. })));
        let b = Matrix::from_rows(&[&[1.0, 2.0], &[2.0, 1.0]]).unwrap();
        assert!(eig_sym(&b).is_ok());
        assert!(matches!(Spectrum::from_symmetric(&b), Err(Error::NotPositiveDefinite { .. })));
    }

    #[test]
    fn sign_convention_makes_largest_entry_positive() {
        let a = Matrix::from_rows(&[&[2.0, -1.0, 0.0], &[-1.0, 2.0, -1.0], &[0.0, -1.0, 2.0]]).unwrap();
        let eig = eig_sym(&a).unwrap();
        for c in 0..3 {
            let col = eig.vectors.column(c);
            let big = col.iter().cloned().fold(0.0f64, |m, x| if x.abs() > m.abs() { x } else { m });
            assert!(big > 0.0);
        }
    }
}
