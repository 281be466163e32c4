mod common;

use proptest::prelude::*;
use rand::Rng;
use stepbias_core::gd::{closed_form, run_to_level_set};
use stepbias_core::regime::{
    alpha_one, certify, classify_rate, complexity_bounds, epsilon_ratio, step_window, RegimeKind,
};
use stepbias_core::{ProblemPair, QuadraticObjective, Spectrum, StopStatus};

/// Rates keeping both leading attenuations above `1/e`, where `α ≤ α₁` implies `t₂ ≥ t₁`.
fn rates(s: &Spectrum, rng: &mut impl Rng) -> (f64, f64) {
    let (s1, sn) = (s.largest(), s.smallest());
    let thr = 2.0 / (s1 + sn);
    let eta_s = thr.min((1.0 - (-1.0f64).exp()) / sn) * rng.random_range(0.05..0.95);
    let lo = thr.max(1.72 / s1);
    let eta_b = lo + (2.0 / s1 - lo) * rng.random_range(0.05..0.95);
    (eta_s, eta_b)
}

fn iota(n: usize, rng: &mut impl Rng) -> Vec<f64> {
    loop {
        let v = common::random_vec(n, 1.0, rng);
        if v[0].abs() >= 1e-3 && v[n - 1].abs() >= 1e-3 {
            return v;
        }
    }
}

#[test]
fn alpha_one_gives_well_posed_windows() {
    let mut rng = common::rng(21);
    let mut checked = 0;
    while checked < 100 {
        let n = rng.random_range(2..7);
        let s = common::random_spectrum(n, &mut rng);
        let (eta_s, eta_b) = rates(&s, &mut rng);
        let io = iota(n, &mut rng);
        let kappa_r = common::log_uniform_spectrum(2, 1e-3, &mut rng);
        let kappa_r = kappa_r[0] / kappa_r[1];
        let a1 = alpha_one(&s, &io, eta_s, eta_b, kappa_r).unwrap();
        if a1.ln_value < -700.0 {
            continue;
        }
        assert!(a1.value > 0.0);
        assert!(a1.value <= 0.5 * s.smallest() * io[n - 1] * io[n - 1]);
        for (eta, kind) in [(eta_s, RegimeKind::Small), (eta_b, RegimeKind::Big)] {
            let r = classify_rate(eta, &s);
            assert_eq!(r.kind, kind);
            let w = step_window(&s, &io, eta, a1.value, kappa_r, &r).unwrap();
            assert!(w.t2 >= w.t1 - 1e-9 * w.t1.abs().max(1.0), "{kind:?} {w:?}");
        }
        checked += 1;
    }
}

#[test]
fn alpha_one_window_can_fail_for_strong_small_rate_attenuation() {
    // Aₙ = 1 − η_sσₙ ≈ 0.187 < 1/e.
    let s = Spectrum::diagonal(&[1.0, 0.76]).unwrap();
    let io = [1.0, 1.0];
    let a1 = alpha_one(&s, &io, 1.07, 1.9, 1.0).unwrap();
    let w = step_window(&s, &io, 1.07, a1.value, 1.0, &classify_rate(1.07, &s)).unwrap();
    assert!(w.t2 < w.t1, "{w:?}");
}

#[test]
fn alpha_one_is_continuous_in_iota_scale() {
    let s = Spectrum::diagonal(&[1.0, 0.6, 0.2]).unwrap();
    let base = [0.5, -0.3, 0.8];
    let mut prev = None;
    for k in 0..=50 {
        let c = 1.0 + 9.0 * k as f64 / 50.0;
        let io: Vec<f64> = base.iter().map(|x| x * c).collect();
        let a = alpha_one(&s, &io, 0.8, 1.85, 3.0).unwrap().value;
        assert!(a > 0.0);
        if let Some(p) = prev {
            let r: f64 = a / p;
            assert!(r > 0.5 && r < 2.0);
        }
        prev = Some(a);
    }
}

#[test]
fn small_rate_gap_scales_like_eta() {
    let s = Spectrum::diagonal(&[1.0, 0.5, 0.4]).unwrap();
    for eta in [1e-3, 1e-4, 1e-5] {
        let (gs, _) = complexity_bounds(&s, eta, 1.9).unwrap();
        assert!((gs / (0.1 * eta) - 1.0).abs() < 1e-2);
    }
}

#[test]
fn epsilon_is_decreasing_and_matches_sum_of_squares() {
    let mut rng = common::rng(22);
    for _ in 0..20 {
        let obj = common::random_objective(5, &mut rng);
        let s = obj.spectrum();
        let (eta_s, eta_b) = rates(s, &mut rng);
        let theta0 = common::random_vec(5, 1.0, &mut rng);
        for eta in [eta_s, eta_b] {
            let r = classify_rate(eta, s);
            let mut prev = f64::INFINITY;
            for t in (0..200).step_by(10) {
                let mu = closed_form(&obj, &theta0, eta, t).unwrap().mu;
                let e = epsilon_ratio(&mu, &r).unwrap();
                let lead = if r.kind == RegimeKind::Big { 0 } else { 4 };
                let brute: f64 = (0..5).filter(|&i| i != lead).map(|i| mu[i] * mu[i]).sum::<f64>() / (mu[lead] * mu[lead]);
                assert!((e - brute).abs() <= 1e-12 * brute.max(1e-300));
                assert!(e < prev);
                prev = e;
            }
        }
    }
}

#[test]
fn sketch_small_epsilon_closed_form() {
    let obj = QuadraticObjective::new(Spectrum::diagonal(&[1.0, 0.2]).unwrap(), vec![0.0; 2], 0.0).unwrap();
    let s = obj.spectrum();
    let r = classify_rate(0.5, s);
    for t in [0u64, 3, 17] {
        let mu = closed_form(&obj, &[0.3, 0.9], 0.5, t).unwrap().mu;
        let expected = (0.5f64 / 0.9).powi(2 * t as i32) * (0.3f64 / 0.9).powi(2);
        assert!((epsilon_ratio(&mu, &r).unwrap() - expected).abs() <= 1e-14 * expected);
    }
}

#[test]
fn certificate_recomputes_from_runs() {
    let s = Spectrum::new(vec![1.0, 0.5, 0.1], common::random_orthogonal(3, &mut common::rng(23))).unwrap();
    let train = QuadraticObjective::new(s, vec![0.1, 0.0, -0.1], 0.0).unwrap();
    let test = QuadraticObjective::new(Spectrum::diagonal(&[1.0, 0.7, 0.3]).unwrap(), vec![0.1, 0.0, -0.1], 0.0)
        .unwrap();
    let pair = ProblemPair::new(train, test).unwrap();
    let theta0 = [1.0, 1.0, 1.0];
    let alpha = 1e-9;
    let rs = run_to_level_set(pair.train(), &theta0, 0.5, alpha, 10_000_000).unwrap();
    let rb = run_to_level_set(pair.train(), &theta0, 1.9, alpha, 10_000_000).unwrap();
    assert_eq!(rs.stop_status, StopStatus::HitLevelSet);
    let c = certify(&pair, &rs, &rb, alpha).unwrap();
    let r_b = pair.test().eval(&rb.theta).unwrap();
    let r_s = pair.test().eval(&rs.theta).unwrap();
    assert_eq!(c.test_b, r_b);
    assert_eq!(c.test_s, r_s);
    assert!((c.bound_rhs - 34.0 * c.kappa_r / c.kappa_f * r_s).abs() <= 1e-12 * c.bound_rhs);
    assert_eq!(c.verdict, r_b <= c.bound_rhs);
    assert_eq!(c.model_error, 0.0);
    assert_eq!(c.c_alpha, 1.0);
    let rec = c.to_record();
    assert_eq!(rec.iter().find(|(k, _)| *k == "verdict").unwrap().1, c.verdict.to_string());
}

proptest! {
    #[test]
    fn classification_partitions_the_line(seed in any::<u64>(), eta in 1e-6f64..10.0) {
        let mut rng = common::rng(seed);
        let s = common::random_spectrum(4, &mut rng);
        let r = classify_rate(eta, &s);
        let (lo, hi) = r.thresholds;
        let near = (eta - lo).abs() <= 1e-12 * lo || (eta - hi).abs() <= 1e-12 * hi;
        let expected = if near {
            RegimeKind::Boundary
        } else if eta < lo {
            RegimeKind::Small
        } else if eta < hi {
            RegimeKind::Big
        } else {
            RegimeKind::Divergent
        };
        prop_assert_eq!(r.kind, expected);
    }
}
