mod common;

use proptest::prelude::*;
use rand::Rng;
use rand_distr::{Distribution, Normal};
use stepbias_core::gd::closed_form;
use stepbias_core::kernel::{gaussian_kernel_matrix, ridge_alpha};
use stepbias_core::linalg::Cholesky;
use stepbias_core::quadratic::from_kernel;
use stepbias_core::spectral::eig_sym;
use stepbias_core::{Dataset, DualMode, DualState, KernelProblem, Matrix};

fn clusters(n: usize, seed: u64) -> Dataset {
    let mut rng = common::rng(seed);
    let noise = Normal::new(0.0, 0.2).unwrap();
    let mut data = Vec::with_capacity(2 * n);
    let mut labels = Vec::with_capacity(n);
    for i in 0..n {
        let y = if i % 2 == 0 { 1.0 } else { -1.0 };
        data.push(y + noise.sample(&mut rng));
        data.push(noise.sample(&mut rng));
        labels.push(y);
    }
    Dataset::new(Matrix::from_row_major(n, 2, data).unwrap(), labels).unwrap()
}

fn random_points(n: usize, d: usize, seed: u64) -> Matrix {
    let mut rng = common::rng(seed);
    Matrix::from_fn(n, d, |_, _| rng.random_range(-1.0..1.0))
}

#[test]
fn kernel_flattens_as_scale_grows() {
    let x = random_points(8, 2, 31);
    let mut prev = 0.0;
    for s in [1.0, 10.0, 100.0, 1000.0] {
        let k = gaussian_kernel_matrix(&x, s).unwrap();
        assert!(k.as_slice().iter().all(|v| *v > 0.0 && *v <= 1.0));
        let e = eig_sym(&k.scaled(1.0 / 8.0)).unwrap();
        let top_share = e.values[0] / e.values.iter().sum::<f64>();
        assert!(top_share > prev);
        prev = top_share;
    }
    assert!(prev > 1.0 - 1e-6);
}

#[test]
fn ridge_residual_and_limits() {
    let x = random_points(10, 3, 32);
    let k = gaussian_kernel_matrix(&x, 1.0).unwrap();
    let y: Vec<f64> = (0..10).map(|i| if i % 3 == 0 { 1.0 } else { -1.0 }).collect();
    let a = ridge_alpha(&k, &y, 0.1).unwrap();
    let r = k.shifted(1.0).matvec(&a).unwrap();
    assert!(common::rel_dev(&r, &y) <= 1e-10);
    let big = ridge_alpha(&k, &y, 1e8).unwrap();
    let expected: Vec<f64> = y.iter().map(|v| v / 1e9).collect();
    assert!(common::rel_dev(&big, &expected) <= 1e-6);
}

#[test]
fn spectrum_bridge() {
    let data = clusters(30, 33);
    let prob = KernelProblem::new(data.clone(), 0.5, 1e-3).unwrap();
    let obj = from_kernel(prob.kernel(), data.labels(), 1e-3).unwrap();
    for (a, b) in obj.spectrum().eigenvalues().iter().zip(&prob.eigen().values) {
        assert!((a - (b + 1e-3)).abs() <= 1e-10 * a);
    }
}

#[test]
fn optimum_coordinates_match_ridge_solution() {
    let prob = KernelProblem::new(clusters(24, 34), 0.5, 1e-2).unwrap();
    let a = prob.ridge_alpha().unwrap();
    let c = prob.to_eigen_coords(&a).unwrap();
    assert!(common::rel_dev(&c, prob.objective().optimum()) <= 1e-8);
}

#[test]
fn primal_mode_matches_theta_space_gd() {
    let prob = KernelProblem::new(clusters(20, 35), 0.5, 1e-3).unwrap();
    let obj = prob.objective();
    let eta = 1.5 / obj.spectrum().largest();
    let mut state = DualState { alpha: vec![0.0; 20], mode: DualMode::Primal };
    let theta0 = prob.to_eigen_coords(&state.alpha).unwrap();
    for _ in 0..100 {
        state = prob.gd_alpha(&state, eta).unwrap();
    }
    let run = closed_form(obj, &theta0, eta, 100).unwrap();
    let got = prob.to_eigen_coords(&state.alpha).unwrap();
    assert!(common::rel_dev(&got, &run.theta) <= 1e-8);
}

#[test]
fn dual_closed_forms_match_iteration() {
    let prob = KernelProblem::new(clusters(16, 36), 0.5, 1e-2).unwrap();
    let s1 = prob.eigen().values[0];
    let n = 16.0;
    let lam = 1e-2;
    for (mode, eta) in [
        (DualMode::TrainLoss, 1.0 / (n * s1 * (s1 + lam))),
        (DualMode::HilbertNorm, 1.0 / (n * (s1 + lam))),
        (DualMode::Primal, 1.0 / (s1 + lam)),
    ] {
        let mut state = DualState { alpha: vec![0.1; 16], mode };
        for _ in 0..60 {
            state = prob.gd_alpha(&state, eta).unwrap();
        }
        let cf = prob.alpha_closed_form(&[0.1; 16], mode, eta, 60).unwrap();
        assert!(common::rel_dev(&state.alpha, &cf) <= 1e-8, "{mode:?}");
    }
}

#[test]
fn hilbert_mode_kills_top_direction_in_one_step() {
    let prob = KernelProblem::new(clusters(12, 37), 0.7, 0.0).unwrap();
    let a_star = prob.ridge_alpha().unwrap();
    let s1 = prob.eigen().values[0];
    let alpha0 = vec![0.3; 12];
    let next = prob
        .gd_alpha(&DualState { alpha: alpha0, mode: DualMode::HilbertNorm }, 1.0 / (12.0 * s1))
        .unwrap();
    let diff: Vec<f64> = next.alpha.iter().zip(&a_star).map(|(a, b)| a - b).collect();
    let c = prob.to_eigen_coords(&diff).unwrap();
    let scale = c.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    assert!(c[0].abs() <= 1e-8 * scale.max(1.0));
}

#[test]
fn hilbert_distance_decreases_under_hilbert_mode() {
    let prob = KernelProblem::new(clusters(20, 38), 0.5, 1e-3).unwrap();
    let a_star = prob.ridge_alpha().unwrap();
    let s1 = prob.eigen().values[0];
    let eta = 1.9 / (20.0 * (s1 + 1e-3));
    let mut state = DualState { alpha: vec![0.0; 20], mode: DualMode::HilbertNorm };
    let mut prev = prob.hilbert_distance2(&state.alpha, &a_star).unwrap();
    for _ in 0..200 {
        state = prob.gd_alpha(&state, eta).unwrap();
        let d = prob.hilbert_distance2(&state.alpha, &a_star).unwrap();
        assert!(d <= prev * (1.0 + 1e-10));
        prev = d;
    }
}

#[test]
fn hilbert_distance_matches_inverse_kernel_oracle() {
    let prob = KernelProblem::new(clusters(10, 39), 0.8, 0.0).unwrap();
    let a_star = prob.ridge_alpha().unwrap();
    let alpha: Vec<f64> = (0..10).map(|i| 0.1 * i as f64).collect();
    let theta_coords = prob.to_eigen_coords(&alpha).unwrap();
    let star_coords = prob.to_eigen_coords(&a_star).unwrap();
    let direct: f64 = theta_coords.iter().zip(&star_coords).map(|(a, b)| (a - b) * (a - b)).sum();
    // K⁻¹ route: ‖θ − θ*‖² = (Kα − y)ᵀ K⁻¹ (Kα − y).
    let k = prob.kernel();
    let r: Vec<f64> = k.matvec(&alpha).unwrap().iter().zip(prob.dataset().labels()).map(|(a, y)| a - y).collect();
    let kinv_r = Cholesky::factor(k).unwrap().solve(&r).unwrap();
    let via_inverse: f64 = r.iter().zip(&kinv_r).map(|(a, b)| a * b).sum();
    let d2 = prob.hilbert_distance2(&alpha, &a_star).unwrap();
    assert!((d2 - direct).abs() <= 1e-8 * direct);
    assert!((d2 - via_inverse).abs() <= 1e-6 * direct);
}

#[test]
fn clusters_are_learned() {
    let prob = KernelProblem::new(clusters(60, 40), 0.5, 1e-3).unwrap();
    let a = prob.ridge_alpha().unwrap();
    let test = clusters(200, 41);
    assert_eq!(prob.binary_error(&a, &test).unwrap(), 0.0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn eigen_coordinates_preserve_the_kernel_norm(seed in any::<u64>()) {
        let prob = KernelProblem::new(clusters(15, seed), 0.6, 0.0).unwrap();
        let mut rng = common::rng(seed ^ 1);
        let alpha = common::random_vec(15, 1.0, &mut rng);
        let c = prob.to_eigen_coords(&alpha).unwrap();
        let q = prob.hilbert_distance2(&alpha, &[0.0; 15]).unwrap();
        let s: f64 = c.iter().map(|v| v * v).sum();
        prop_assert!((s - q).abs() <= 1e-8 * q.max(1e-12));
    }

    #[test]
    fn kernel_seminorm_triangle_inequality(seed in any::<u64>()) {
        let prob = KernelProblem::new(clusters(12, seed), 0.6, 0.0).unwrap();
        let mut rng = common::rng(seed ^ 2);
        let a = common::random_vec(12, 1.0, &mut rng);
        let b = common::random_vec(12, 1.0, &mut rng);
        let c = common::random_vec(12, 1.0, &mut rng);
        let d = |x: &[f64], y: &[f64]| prob.hilbert_distance2(x, y).unwrap().sqrt();
        prop_assert!(d(&a, &c) <= d(&a, &b) + d(&b, &c) + 1e-12);
    }

    #[test]
    fn predictions_bounded_by_hilbert_norm(seed in any::<u64>(), x in -2.0f64..2.0, y in -2.0f64..2.0) {
        let prob = KernelProblem::new(clusters(12, seed), 0.6, 0.0).unwrap();
        let mut rng = common::rng(seed ^ 3);
        let a = common::random_vec(12, 1.0, &mut rng);
        let norm = prob.hilbert_distance2(&a, &[0.0; 12]).unwrap().sqrt();
        prop_assert!(prob.predict(&a, &[x, y]).unwrap().abs() <= prob.c_k() * norm * (1.0 + 1e-9) + 1e-12);
    }
}
