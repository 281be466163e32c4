mod common;

use stepbias_core::gd::closed_form;
use stepbias_core::regime::{classify_rate, epsilon_ratio, RegimeKind};
use stepbias_core::ToyInstance;

#[test]
fn trajectory_matches_closed_form() {
    let toy = ToyInstance::new(1.0, 0.3, -0.7).unwrap();
    let pair = toy.pair();
    for eta in [0.1, 0.5, 1.0, 1.4, 1.9] {
        for t in [0u64, 1, 7, 50, 200] {
            let (x, y) = toy.trajectory(eta, t);
            let run = closed_form(pair.train(), &toy.theta0(), eta, t).unwrap();
            assert!(common::rel_dev(&[x, y], &run.theta) <= 1e-12);
        }
    }
}

#[test]
fn epsilon_bounds_hold_past_first_threshold() {
    let toy = ToyInstance::new(1.0, 0.2, 1.0).unwrap();
    let pair = toy.pair();
    for (eta, kind, bound) in [(0.5, RegimeKind::Small, 0.1), (1.9, RegimeKind::Big, 0.5)] {
        let w = toy.thresholds(eta, 1e-9, kind).unwrap();
        let r = classify_rate(eta, pair.train().spectrum());
        let start = w.t1.ceil() as u64;
        for t in start..start + 30 {
            let mu = closed_form(pair.train(), &toy.theta0(), eta, t).unwrap().mu;
            assert!(epsilon_ratio(&mu, &r).unwrap() <= bound * (1.0 + 1e-12));
        }
        if start > 0 {
            let mu = closed_form(pair.train(), &toy.theta0(), eta, start - 1).unwrap().mu;
            assert!(epsilon_ratio(&mu, &r).unwrap() > bound * (1.0 - 1e-12));
        }
    }
}

#[test]
fn smaller_alpha_eventually_feasible() {
    let toy = ToyInstance::new(1.0, 0.2, 1.0).unwrap();
    let mut prev_t2 = f64::NEG_INFINITY;
    let mut t1 = None;
    for k in 1..12 {
        let w = toy.thresholds(1.9, 10f64.powi(-k), RegimeKind::Big).unwrap();
        assert!(w.t2 > prev_t2);
        assert_eq!(*t1.get_or_insert(w.t1), w.t1);
        prev_t2 = w.t2;
    }
    assert!(toy.thresholds(1.9, 1e-11, RegimeKind::Big).unwrap().feasible());
}

#[test]
fn ratio_increases_with_condition_number() {
    let mut prev = 0.0;
    for kappa in [2.0, 5.0, 10.0] {
        let toy = ToyInstance::new(1.0, 1.0 / kappa, 1.0).unwrap();
        let r = toy.ratio_check(0.1, 1.9, 1e-8, 10_000_000).unwrap();
        assert!(r.passes, "kappa {kappa}: ratio {}", r.ratio);
        assert!(r.ratio > prev);
        prev = r.ratio;
    }
}
