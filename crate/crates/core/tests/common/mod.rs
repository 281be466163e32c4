#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stepbias_core::{Matrix, QuadraticObjective, Spectrum};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Product of random Givens rotations over every coordinate pair.
pub fn random_orthogonal(n: usize, rng: &mut impl Rng) -> Matrix {
    let mut q = Matrix::identity(n);
    for _ in 0..2 {
        for i in 0..n {
            for j in (i + 1)..n {
                let a: f64 = rng.random_range(0.0..std::f64::consts::TAU);
                let (s, c) = a.sin_cos();
                for k in 0..n {
                    let (x, y) = (q[(k, i)], q[(k, j)]);
                    q[(k, i)] = c * x - s * y;
                    q[(k, j)] = s * x + c * y;
                }
            }
        }
    }
    q
}

/// Distinct eigenvalues drawn log-uniformly in `[lo, 1]`, sorted descending.
pub fn log_uniform_spectrum(n: usize, lo: f64, rng: &mut impl Rng) -> Vec<f64> {
    loop {
        let mut v: Vec<f64> = (0..n).map(|_| (rng.random_range(lo.ln()..0.0)).exp()).collect();
        v.sort_by(|a, b| b.partial_cmp(a).unwrap());
        if v.windows(2).all(|w| w[0] - w[1] > 1e-6) {
            return v;
        }
    }
}

pub fn random_spectrum(n: usize, rng: &mut impl Rng) -> Spectrum {
    let values = log_uniform_spectrum(n, 1e-3, rng);
    Spectrum::new(values, random_orthogonal(n, rng)).unwrap()
}

pub fn random_vec(n: usize, scale: f64, rng: &mut impl Rng) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(-scale..scale)).collect()
}

pub fn random_objective(n: usize, rng: &mut impl Rng) -> QuadraticObjective {
    let s = random_spectrum(n, rng);
    QuadraticObjective::new(s, random_vec(n, 1.0, rng), rng.random_range(0.0..1.0)).unwrap()
}

/// Dense matrix `Q diag(s) Qᵀ`.
pub fn dense(s: &Spectrum) -> Matrix {
    s.reconstruct()
}

pub fn rel_dev(a: &[f64], b: &[f64]) -> f64 {
    let scale = b.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let diff = a.iter().zip(b).fold(0.0f64, |m, (x, y)| m.max((x - y).abs()));
    if scale == 0.0 {
        diff
    } else {
        diff / scale
    }
}
