//! Synthetic data: two Gaussian clusters, a deterministic test grid and random
//! quadratic problem pairs that satisfy the certificate's assumptions.

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use stepbias_core::gd::{run_to_level_set, GdRun};
use stepbias_core::regime::{alpha_one, check_assumptions};
use stepbias_core::{Dataset, Matrix, ProblemPair, QuadraticObjective, Spectrum, StopStatus};

use crate::error::{LabError, Result};

/// `n` points, alternately labelled `+1` (around `+e₁`) and `−1` (around `−e₁`),
/// with isotropic Gaussian noise of standard deviation `noise`.
pub fn two_clusters(n: usize, d: usize, noise: f64, rng: &mut impl Rng) -> Result<Dataset> {
    let mut values = Vec::with_capacity(n * d);
    let mut labels = Vec::with_capacity(n);
    for i in 0..n {
        let y = if i % 2 == 0 { 1.0 } else { -1.0 };
        for j in 0..d {
            let z: f64 = StandardNormal.sample(rng);
            values.push(if j == 0 { y } else { 0.0 } + noise * z);
        }
        labels.push(y);
    }
    Ok(Dataset::new(Matrix::from_row_major(n, d, values)?, labels)?)
}

/// `per_centre` points filling the disk of the given radius around each of
/// `±e₁` (a Vogel spiral in the first two coordinates, an even grid when `d = 1`).
pub fn disk_grid(per_centre: usize, radius: f64, d: usize) -> Result<Dataset> {
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    let mut values = Vec::with_capacity(2 * per_centre * d);
    let mut labels = Vec::with_capacity(2 * per_centre);
    for y in [1.0, -1.0] {
        for k in 0..per_centre {
            let mut p = vec![0.0; d];
            if d == 1 {
                let u = if per_centre == 1 { 0.5 } else { k as f64 / (per_centre - 1) as f64 };
                p[0] = y + radius * (2.0 * u - 1.0);
            } else {
                let r = radius * ((k as f64 + 0.5) / per_centre as f64).sqrt();
                let (s, c) = (k as f64 * golden).sin_cos();
                p[0] = y + r * c;
                p[1] = r * s;
            }
            values.extend(p);
            labels.push(y);
        }
    }
    Ok(Dataset::new(Matrix::from_row_major(2 * per_centre, d, values)?, labels)?)
}

/// Product of random Givens rotations over every coordinate pair, twice.
pub fn random_orthogonal(n: usize, rng: &mut impl Rng) -> Matrix {
    let mut q = Matrix::identity(n);
    for _ in 0..2 {
        for i in 0..n {
            for j in (i + 1)..n {
                let (s, c) = rng.random_range(0.0..std::f64::consts::TAU).sin_cos();
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

/// Top eigenvalue `1`, the others log-uniform in `[lo, 1)`, pairwise separated.
pub fn unit_top_spectrum(n: usize, lo: f64, rng: &mut impl Rng) -> Vec<f64> {
    loop {
        let mut v: Vec<f64> = (0..n).map(|i| if i == 0 { 1.0 } else { rng.random_range(lo.ln()..0.0).exp() }).collect();
        v.sort_by(|a, b| b.total_cmp(a));
        if v.windows(2).all(|w| w[0] - w[1] > 1e-3 * w[0]) {
            return v;
        }
    }
}

/// Step sizes with both leading attenuations at least `1/e`, the range in which
/// `α ≤ α₁` is enough for a nonempty step window.
pub fn certificate_rates(s: &Spectrum, rng: &mut impl Rng) -> (f64, f64) {
    let (s1, sn) = (s.largest(), s.smallest());
    let thr = 2.0 / (s1 + sn);
    let eta_s = thr.min((1.0 - (-1.0f64).exp()) / sn) * rng.random_range(0.05..0.95);
    let lo = thr.max(1.72 / s1);
    let eta_b = lo + (2.0 / s1 - lo) * rng.random_range(0.05..0.95);
    (eta_s, eta_b)
}

#[derive(Debug, Clone)]
pub struct CertifyInstance {
    pub pair: ProblemPair,
    pub theta0: Vec<f64>,
    pub eta_s: f64,
    pub eta_b: f64,
    pub alpha: f64,
    pub run_s: GdRun,
    pub run_b: GdRun,
    /// Draws rejected before this one.
    pub rejected: usize,
}

const MAX_DRAWS: usize = 10_000;
/// Smallest `ln α₁` accepted; below it the level set is out of double range.
const LN_ALPHA_FLOOR: f64 = -460.0;

/// Draws a normalized problem pair (`σ₁ = ς₁ = 1`, `κ ≤ 100`), rates, an
/// initialization and `α ∈ [0.1, 1]·α₁`, then a test optimum at model error
/// `R(θ̂*) = v·cap·α` with `v ∈ [0, 1)`. Draws are rejected until both runs
/// land in the `(α/2, α]` band.
pub fn certify_instance(max_dim: usize, t_max: u64, rng: &mut impl Rng) -> Result<CertifyInstance> {
    for rejected in 0..MAX_DRAWS {
        let n = rng.random_range(2..=max_dim);
        let train_s = Spectrum::new(unit_top_spectrum(n, 1e-2, rng), random_orthogonal(n, rng))?;
        let test_s = Spectrum::new(unit_top_spectrum(n, 1e-2, rng), random_orthogonal(n, rng))?;
        let kappa_r = test_s.condition_number();
        let opt: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        let theta0: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        let (eta_s, eta_b) = certificate_rates(&train_s, rng);
        let train = QuadraticObjective::new(train_s, opt.clone(), rng.random_range(0.0..1.0))?;
        let iota = train.coefficients(&theta0)?;
        if iota[0].abs() < 1e-3 || iota[n - 1].abs() < 1e-3 {
            continue;
        }
        let a1 = alpha_one(train.spectrum(), &iota, eta_s, eta_b, kappa_r)?;
        if a1.ln_value < LN_ALPHA_FLOOR {
            continue;
        }
        let alpha = (a1.ln_value + rng.random_range(0.1f64..1.0).ln()).exp();
        let cap = 0.25f64.min(train.spectrum().condition_number() / (72.0 * kappa_r));
        let target = rng.random_range(0.0..1.0) * cap * alpha;
        let dir: Vec<f64> = (0..n).map(|_| StandardNormal.sample(rng)).collect();
        let unit = QuadraticObjective::new(test_s.clone(), vec![0.0; n], 0.0)?.eval(&dir)?;
        let shift = (target / unit).sqrt();
        let test_opt: Vec<f64> = opt.iter().zip(&dir).map(|(o, d)| o - shift * d).collect();
        let test = QuadraticObjective::new(test_s, test_opt, 0.0)?;
        let pair = ProblemPair::new(train, test)?;
        if !check_assumptions(&pair, &theta0, eta_s, eta_b, alpha)?.all() {
            continue;
        }
        let run_s = run_to_level_set(pair.train(), &theta0, eta_s, alpha, t_max)?;
        let run_b = run_to_level_set(pair.train(), &theta0, eta_b, alpha, t_max)?;
        let landed = |r: &GdRun| r.stop_status == StopStatus::HitLevelSet && r.half_level_ok() == Some(true);
        if !landed(&run_s) || !landed(&run_b) {
            continue;
        }
        return Ok(CertifyInstance { pair, theta0, eta_s, eta_b, alpha, run_s, run_b, rejected });
    }
    Err(LabError::Certification(format!("no admissible instance in {MAX_DRAWS} draws")))
}
