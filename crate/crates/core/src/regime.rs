//! Small and big learning rates, the quantities that control them and the
//! certificate comparing the two stopped estimators.
//!
//! All attenuation coefficients are magnitudes `|1 − ησ_i|`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::gd::{GdRun, StopStatus};
use crate::math;
use crate::quadratic::ProblemPair;
use crate::spectral::Spectrum;

/// Relative distance to a threshold under which a rate is `Boundary`.
pub const BOUNDARY_TOL: f64 = 1e-12;

/// Coefficients smaller than this are treated as zero in ratios.
pub const UNDERFLOW_GUARD: f64 = 1e-300;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RegimeKind {
    Small,
    Big,
    Divergent,
    Boundary,
}

impl RegimeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            RegimeKind::Small => "small",
            RegimeKind::Big => "big",
            RegimeKind::Divergent => "divergent",
            RegimeKind::Boundary => "boundary",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateRegime {
    pub kind: RegimeKind,
    pub eta: f64,
    /// `(2/(σ₁+σₙ), 2/σ₁)`.
    pub thresholds: (f64, f64),
}

/// `|1 − ησ|`.
pub fn attenuation(eta: f64, sigma: f64) -> f64 {
    math::abs(1.0 - eta * sigma)
}

pub fn classify_rate(eta: f64, spectrum: &Spectrum) -> RateRegime {
    let s1 = spectrum.largest();
    let sn = spectrum.smallest();
    let lower = 2.0 / (s1 + sn);
    let upper = 2.0 / s1;
    let near = |thr: f64| math::abs(eta - thr) <= BOUNDARY_TOL * thr;
    let kind = if near(lower) || near(upper) {
        RegimeKind::Boundary
    } else if eta < lower {
        RegimeKind::Small
    } else if eta < upper {
        RegimeKind::Big
    } else {
        RegimeKind::Divergent
    };
    RateRegime { kind, eta, thresholds: (lower, upper) }
}

fn require_valid(regime: &RateRegime, n: usize) -> Result<()> {
    match regime.kind {
        RegimeKind::Small | RegimeKind::Big if n >= 2 => Ok(()),
        RegimeKind::Small | RegimeKind::Big => {
            Err(Error::InvalidArgument("at least two eigenvalues are needed"))
        }
        _ => Err(Error::WrongRegime),
    }
}

/// Attenuation of the direction that survives longest: `e₁` for big rates, `eₙ` for small ones.
pub fn leading_attenuation(spectrum: &Spectrum, regime: &RateRegime) -> Result<f64> {
    require_valid(regime, spectrum.dim())?;
    let sigma = match regime.kind {
        RegimeKind::Big => spectrum.largest(),
        _ => spectrum.smallest(),
    };
    Ok(attenuation(regime.eta, sigma))
}

/// Largest attenuation among the remaining directions.
///
/// Big: `max(|A₂|, |Aₙ|)`. Small: `max(|A₁|, |A_{n−1}|)`, which is
/// `|A_{n−1}|` whenever `η ≤ 2/(σ₁+σ_{n−1})` and stays a valid bound
/// for every small rate since `|1 − ησ|` is convex in `σ`.
pub fn second_attenuation(eta: f64, spectrum: &Spectrum, regime: &RateRegime) -> Result<f64> {
    let n = spectrum.dim();
    require_valid(regime, n)?;
    let s = spectrum.eigenvalues();
    Ok(match regime.kind {
        RegimeKind::Big => attenuation(eta, s[1]).max(attenuation(eta, s[n - 1])),
        _ => attenuation(eta, s[0]).max(attenuation(eta, s[n - 2])),
    })
}

/// `ε_b² = Σ_{i>1} μ_i² / μ₁²` for big rates, `ε_s² = Σ_{i<n} μ_i² / μₙ²` for small rates.
pub fn epsilon_ratio(mu: &[f64], regime: &RateRegime) -> Result<f64> {
    let n = mu.len();
    require_valid(regime, n)?;
    let lead = match regime.kind {
        RegimeKind::Big => 0,
        _ => n - 1,
    };
    let d = mu[lead];
    if math::abs(d) < UNDERFLOW_GUARD {
        return Err(Error::ZeroDenominator);
    }
    let rest: f64 = mu.iter().enumerate().filter(|(i, _)| *i != lead).map(|(_, m)| m * m).sum();
    Ok(rest / (d * d))
}

/// The upper bound `α₁` on the target accuracy, with the two per-regime
/// bounds it is meant to imply kept alongside for audit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaOne {
    pub value: f64,
    /// `ln α₁`, finite even when `value` underflows.
    pub ln_value: f64,
    pub numerator: f64,
    pub denominator: f64,
    /// `½σ₁ι₁² exp(−log[‖ι‖²4nκ_R/ι₁² + 1/(η_bσ₁−1)] / log(A₁/Ā_b))`.
    pub big_reading: f64,
    /// `½σₙιₙ² exp(−log[‖ι‖²max(16nκ_R, 4κ_F)/ιₙ² + 1/(1−η_sσₙ)] / log(Aₙ/Ā_s))`.
    pub small_reading: f64,
}

/// `α₁ = ½σₙιₙ² exp(−N/D)` with
/// `N = log[‖ι‖² max(16nκ_R, 4κ_F) max(1/ι₁², 1/ιₙ²) + 1/(1−η_sσₙ) + 1/(η_bσ₁−1)]`
/// and `D = min(log(Aₙ/Ā_s), log(A₁/Ā_b))`.
pub fn alpha_one(spectrum: &Spectrum, iota: &[f64], eta_s: f64, eta_b: f64, kappa_r: f64) -> Result<AlphaOne> {
    let n = spectrum.dim();
    if iota.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: iota.len() });
    }
    let small = classify_rate(eta_s, spectrum);
    let big = classify_rate(eta_b, spectrum);
    if small.kind != RegimeKind::Small || big.kind != RegimeKind::Big {
        return Err(Error::WrongRegime);
    }
    require_valid(&small, n)?;
    let (i1, i_n) = (iota[0], iota[n - 1]);
    if i1 == 0.0 || i_n == 0.0 {
        return Err(Error::ZeroInitialization);
    }
    let s1 = spectrum.largest();
    let sn = spectrum.smallest();
    let kappa_f = spectrum.condition_number();
    let nf = n as f64;
    let norm2 = math::norm2_sq(iota);
    let (i1s, ins) = (i1 * i1, i_n * i_n);

    let a_n = attenuation(eta_s, sn);
    let a_s_bar = second_attenuation(eta_s, spectrum, &small)?;
    let a_1 = attenuation(eta_b, s1);
    let a_b_bar = second_attenuation(eta_b, spectrum, &big)?;
    let gap_s = math::ln(a_n / a_s_bar);
    let gap_b = math::ln(a_1 / a_b_bar);

    let small_factor = (16.0 * nf * kappa_r).max(4.0 * kappa_f);
    let numerator = math::ln(
        norm2 * small_factor * (1.0 / i1s).max(1.0 / ins) + 1.0 / (1.0 - eta_s * sn) + 1.0 / (eta_b * s1 - 1.0),
    );
    let denominator = gap_s.min(gap_b);
    let ln_value = math::ln(0.5 * sn * ins) - numerator / denominator;

    let big_reading = 0.5
        * s1
        * i1s
        * math::exp(-math::ln(norm2 / i1s * 4.0 * nf * kappa_r + 1.0 / (eta_b * s1 - 1.0)) / gap_b);
    let small_reading =
        0.5 * sn * ins * math::exp(-math::ln(norm2 / ins * small_factor + 1.0 / (1.0 - eta_s * sn)) / gap_s);

    Ok(AlphaOne { value: math::exp(ln_value), ln_value, numerator, denominator, big_reading, small_reading })
}

/// Real-valued step thresholds of the per-regime lemmas.
///
/// `t ≥ t₁` makes the ε bound hold; the level-set window is `(t₂, t₃)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepWindow {
    pub t1: f64,
    pub t2: f64,
    pub t3: f64,
}

impl StepWindow {
    pub fn well_posed(&self) -> bool {
        self.t2 > self.t1
    }

    /// Whether `[t₂, t₃]` contains an integer.
    pub fn has_integer(&self) -> bool {
        libm::ceil(self.t2) <= libm::floor(self.t3)
    }

    pub fn contains(&self, t: u64) -> bool {
        let t = t as f64;
        t >= self.t1 && t >= self.t2 && t <= self.t3
    }
}

/// Big: `t₁ = ½ log(‖ι‖² 4nκ_R / ι₁²) / log(A₁/Ā_b)`, `t₂ = ½ log(½σ₁ι₁²/α) / log(1/A₁)`,
/// `t₃` as `t₂` with `5/4` in place of `½`.
/// Small: the same with `σₙ`, `ιₙ`, `Aₙ`, `Ā_s` and `max(16nκ_R, 4κ_F)` in `t₁`.
pub fn step_window(
    spectrum: &Spectrum,
    iota: &[f64],
    eta: f64,
    alpha: f64,
    kappa_r: f64,
    regime: &RateRegime,
) -> Result<StepWindow> {
    let n = spectrum.dim();
    require_valid(regime, n)?;
    if iota.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: iota.len() });
    }
    if !(alpha > 0.0) {
        return Err(Error::InvalidArgument("alpha must be positive"));
    }
    let nf = n as f64;
    let norm2 = math::norm2_sq(iota);
    let lead = leading_attenuation(spectrum, regime)?;
    let second = second_attenuation(eta, spectrum, regime)?;
    let (sigma, i_lead, factor) = match regime.kind {
        RegimeKind::Big => (spectrum.largest(), iota[0], 4.0 * nf * kappa_r),
        _ => (
            spectrum.smallest(),
            iota[n - 1],
            (16.0 * nf * kappa_r).max(4.0 * spectrum.condition_number()),
        ),
    };
    if i_lead == 0.0 {
        return Err(Error::ZeroInitialization);
    }
    let i2 = i_lead * i_lead;
    let t1 = 0.5 * math::ln(norm2 / i2 * factor) / math::ln(lead / second);
    let rate = math::ln(1.0 / lead);
    let t2 = 0.5 * math::ln(0.5 * sigma * i2 / alpha) / rate;
    let t3 = 0.5 * math::ln(1.25 * sigma * i2 / alpha) / rate;
    Ok(StepWindow { t1, t2, t3 })
}

/// `(log(Aₙ/Ā_s), log(A₁/Ā_b))`; the step lower bounds scale as the inverse of these gaps.
pub fn complexity_bounds(spectrum: &Spectrum, eta_s: f64, eta_b: f64) -> Result<(f64, f64)> {
    let small = classify_rate(eta_s, spectrum);
    let big = classify_rate(eta_b, spectrum);
    if small.kind != RegimeKind::Small || big.kind != RegimeKind::Big {
        return Err(Error::WrongRegime);
    }
    let gs = math::ln(leading_attenuation(spectrum, &small)? / second_attenuation(eta_s, spectrum, &small)?);
    let gb = math::ln(leading_attenuation(spectrum, &big)? / second_attenuation(eta_b, spectrum, &big)?);
    Ok((gs, gb))
}

/// Per-assumption verdicts with the numbers behind them.
#[derive(Debug, Clone, PartialEq)]
pub struct AssumptionReport {
    /// Train eigenvalues pairwise distinct.
    pub distinct_eigenvalues: bool,
    pub small_kind: RegimeKind,
    pub big_kind: RegimeKind,
    /// `η_s` small and `η_b` big.
    pub rate_ordering: bool,
    pub iota_first: f64,
    pub iota_last: f64,
    /// `ι₁ ≠ 0` and `ιₙ ≠ 0`.
    pub nonzero_init: bool,
    pub alpha_1: Option<AlphaOne>,
    /// `α ≤ α₁`.
    pub alpha_below_alpha_1: bool,
    pub model_error: f64,
    /// `R(θ̂*)/α`.
    pub model_error_ratio: f64,
    /// `min(1/4, κ_F/(72κ_R))`.
    pub model_error_cap: f64,
    pub model_error_ok: bool,
}

impl AssumptionReport {
    pub fn target_ok(&self) -> bool {
        self.alpha_below_alpha_1 && self.model_error_ok
    }

    pub fn all(&self) -> bool {
        self.distinct_eigenvalues && self.rate_ordering && self.nonzero_init && self.target_ok()
    }
}

pub fn check_assumptions(pair: &ProblemPair, theta0: &[f64], eta_s: f64, eta_b: f64, alpha: f64) -> Result<AssumptionReport> {
    let train = pair.train();
    let spectrum = train.spectrum();
    let n = spectrum.dim();
    let iota = train.coefficients(theta0)?;
    let small = classify_rate(eta_s, spectrum);
    let big = classify_rate(eta_b, spectrum);
    let rate_ordering = n >= 2 && small.kind == RegimeKind::Small && big.kind == RegimeKind::Big;
    let nonzero_init = iota[0] != 0.0 && iota[n - 1] != 0.0;
    let kappa_r = pair.kappa_test();
    let alpha_1 = if rate_ordering && nonzero_init {
        Some(alpha_one(spectrum, &iota, eta_s, eta_b, kappa_r)?)
    } else {
        None
    };
    let alpha_below_alpha_1 = match alpha_1 {
        Some(a) => alpha > 0.0 && math::ln(alpha) <= a.ln_value,
        None => false,
    };
    let model_error = pair.model_error();
    let model_error_ratio = model_error / alpha;
    let model_error_cap = (0.25f64).min(pair.kappa_train() / (72.0 * kappa_r));
    Ok(AssumptionReport {
        distinct_eigenvalues: !spectrum.is_degenerate(),
        small_kind: small.kind,
        big_kind: big.kind,
        rate_ordering,
        iota_first: iota[0],
        iota_last: iota[n - 1],
        nonzero_init,
        alpha_1,
        alpha_below_alpha_1,
        model_error,
        model_error_ratio,
        model_error_cap,
        model_error_ok: model_error_ratio <= model_error_cap,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FailureReason {
    /// `1 − √(18 (σₙ/ςₙ) R(θ̂*)/α) ≤ 0`, so `c_α` is infinite.
    ModelErrorTooLarge,
    /// The measured test losses violate the bound.
    BoundViolated,
}

impl FailureReason {
    pub fn as_str(self) -> &'static str {
        match self {
            FailureReason::ModelErrorTooLarge => "model_error_too_large",
            FailureReason::BoundViolated => "bound_violated",
        }
    }
}

/// Every quantity entering the comparison of the big-rate and small-rate estimators.
///
/// `σ` are train eigenvalues and `ς` test eigenvalues.
#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub n: usize,
    pub alpha: f64,
    pub alpha_1: AlphaOne,
    pub eta_s: f64,
    pub eta_b: f64,
    pub steps_s: u64,
    pub steps_b: u64,
    pub kappa_f: f64,
    pub kappa_r: f64,
    pub sigma_1: f64,
    pub sigma_n: f64,
    pub varsigma_1: f64,
    pub varsigma_n: f64,
    pub model_error: f64,
    pub epsilon_b2: f64,
    pub epsilon_s2: f64,
    pub window_b: StepWindow,
    pub window_s: StepWindow,
    /// `½σ₁μ₁²` of the big-rate run.
    pub lead_energy_b: f64,
    /// `½σₙμₙ²` of the small-rate run.
    pub lead_energy_s: f64,
    pub excess_b: f64,
    pub excess_s: f64,
    /// Measured `R(θ_b)`.
    pub test_b: f64,
    /// Measured `R(θ_s)`.
    pub test_s: f64,
    /// `5α ς₁/σ₁ + 2R(θ̂*)`.
    pub test_b_upper: f64,
    /// `(3/10) α (ςₙ/σₙ)(1 − √(18 R(θ̂*) σₙ/(ςₙ α)))`.
    pub test_s_lower: f64,
    /// `(1 + 2(σ₁/ς₁)R(θ̂*)/α) / (1 − √(18(σₙ/ςₙ)R(θ̂*)/α))₊`, possibly `+∞`.
    pub c_alpha: f64,
    /// `17 (κ_R/κ_F) c_α R(θ_s)`.
    pub general_rhs: f64,
    /// `34 (κ_R/κ_F) R(θ_s)`.
    pub bound_rhs: f64,
    pub half_level_b: bool,
    pub half_level_s: bool,
    /// `(2/5)α ≤ ½σ₁μ₁² ≤ α`.
    pub lemma_big_energy: bool,
    /// `ε_b² ≤ 1/(4nκ_R)`.
    pub lemma_big_epsilon: bool,
    /// `(2/5)α ≤ ½σₙμₙ² ≤ α`.
    pub lemma_small_energy: bool,
    /// `ε_s² ≤ min(1/(16nκ_R), 1/(4κ_F))`.
    pub lemma_small_epsilon: bool,
    pub assumptions: AssumptionReport,
    pub general_holds: bool,
    pub verdict: bool,
    pub failure: Option<FailureReason>,
}

/// Builds the certificate from a small-rate and a big-rate run stopped on the same level set.
pub fn certify(pair: &ProblemPair, run_s: &GdRun, run_b: &GdRun, alpha: f64) -> Result<Certificate> {
    let train = pair.train();
    let test = pair.test();
    let spectrum = train.spectrum();
    let n = pair.dim();
    let small = classify_rate(run_s.eta, spectrum);
    let big = classify_rate(run_b.eta, spectrum);
    if small.kind != RegimeKind::Small || big.kind != RegimeKind::Big || n < 2 {
        return Err(Error::RegimeMismatch);
    }
    for run in [run_s, run_b] {
        if run.stop_status != StopStatus::HitLevelSet || run.alpha != Some(alpha) {
            return Err(Error::LevelSetMismatch);
        }
        if run.mu.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: run.mu.len() });
        }
    }
    let iota = &run_s.iota;
    let theta0 = train.point_from_coefficients(iota)?;
    let assumptions = check_assumptions(pair, &theta0, run_s.eta, run_b.eta, alpha)?;
    let kappa_f = pair.kappa_train();
    let kappa_r = pair.kappa_test();
    let alpha_1 = alpha_one(spectrum, iota, run_s.eta, run_b.eta, kappa_r)?;
    let window_b = step_window(spectrum, &run_b.iota, run_b.eta, alpha, kappa_r, &big)?;
    let window_s = step_window(spectrum, iota, run_s.eta, alpha, kappa_r, &small)?;
    let epsilon_b2 = epsilon_ratio(&run_b.mu, &big)?;
    let epsilon_s2 = epsilon_ratio(&run_s.mu, &small)?;

    let nf = n as f64;
    let sigma_1 = spectrum.largest();
    let sigma_n = spectrum.smallest();
    let varsigma_1 = test.spectrum().largest();
    let varsigma_n = test.spectrum().smallest();
    let r_opt = pair.model_error();
    let test_b = test.eval(&run_b.theta)?;
    let test_s = test.eval(&run_s.theta)?;

    let mu_b1 = run_b.mu[0];
    let mu_sn = run_s.mu[n - 1];
    let lead_energy_b = 0.5 * sigma_1 * mu_b1 * mu_b1;
    let lead_energy_s = 0.5 * sigma_n * mu_sn * mu_sn;
    let in_energy_band = |e: f64| 0.4 * alpha <= e && e <= alpha;

    let root = math::sqrt(18.0 * (sigma_n / varsigma_n) * r_opt / alpha);
    let test_b_upper = 5.0 * alpha * varsigma_1 / sigma_1 + 2.0 * r_opt;
    let test_s_lower = 0.3 * alpha * (varsigma_n / sigma_n) * (1.0 - root);
    let denom = 1.0 - root;
    let c_alpha = if denom > 0.0 {
        (1.0 + 2.0 * (sigma_1 / varsigma_1) * r_opt / alpha) / denom
    } else {
        f64::INFINITY
    };
    let ratio = kappa_r / kappa_f;
    let general_rhs = 17.0 * ratio * c_alpha * test_s;
    let bound_rhs = 34.0 * ratio * test_s;
    let general_holds = c_alpha.is_finite() && test_b <= general_rhs;
    let (verdict, failure) = if !c_alpha.is_finite() {
        (false, Some(FailureReason::ModelErrorTooLarge))
    } else if test_b <= bound_rhs {
        (true, None)
    } else {
        (false, Some(FailureReason::BoundViolated))
    };

    Ok(Certificate {
        n,
        alpha,
        alpha_1,
        eta_s: run_s.eta,
        eta_b: run_b.eta,
        steps_s: run_s.steps,
        steps_b: run_b.steps,
        kappa_f,
        kappa_r,
        sigma_1,
        sigma_n,
        varsigma_1,
        varsigma_n,
        model_error: r_opt,
        epsilon_b2,
        epsilon_s2,
        window_b,
        window_s,
        lead_energy_b,
        lead_energy_s,
        excess_b: run_b.final_excess(),
        excess_s: run_s.final_excess(),
        test_b,
        test_s,
        test_b_upper,
        test_s_lower,
        c_alpha,
        general_rhs,
        bound_rhs,
        half_level_b: run_b.half_level_ok() == Some(true),
        half_level_s: run_s.half_level_ok() == Some(true),
        lemma_big_energy: in_energy_band(lead_energy_b),
        lemma_big_epsilon: epsilon_b2 <= 1.0 / (4.0 * nf * kappa_r),
        lemma_small_energy: in_energy_band(lead_energy_s),
        lemma_small_epsilon: epsilon_s2 <= (1.0 / (16.0 * nf * kappa_r)).min(1.0 / (4.0 * kappa_f)),
        assumptions,
        general_holds,
        verdict,
        failure,
    })
}

fn num(x: f64) -> String {
    format!("{:.16e}", x)
}

impl Certificate {
    /// Flat key/value view, in a fixed order.
    pub fn to_record(&self) -> Vec<(&'static str, String)> {
        let b = |x: bool| String::from(if x { "true" } else { "false" });
        let a = &self.assumptions;
        alloc::vec![
            ("n", format!("{}", self.n)),
            ("alpha", num(self.alpha)),
            ("alpha_1", num(self.alpha_1.value)),
            ("ln_alpha_1", num(self.alpha_1.ln_value)),
            ("alpha_1_big_reading", num(self.alpha_1.big_reading)),
            ("alpha_1_small_reading", num(self.alpha_1.small_reading)),
            ("eta_s", num(self.eta_s)),
            ("eta_b", num(self.eta_b)),
            ("steps_s", format!("{}", self.steps_s)),
            ("steps_b", format!("{}", self.steps_b)),
            ("kappa_f", num(self.kappa_f)),
            ("kappa_r", num(self.kappa_r)),
            ("sigma_1", num(self.sigma_1)),
            ("sigma_n", num(self.sigma_n)),
            ("varsigma_1", num(self.varsigma_1)),
            ("varsigma_n", num(self.varsigma_n)),
            ("model_error", num(self.model_error)),
            ("epsilon_b2", num(self.epsilon_b2)),
            ("epsilon_s2", num(self.epsilon_s2)),
            ("t1_b", num(self.window_b.t1)),
            ("t2_b", num(self.window_b.t2)),
            ("t3_b", num(self.window_b.t3)),
            ("t1_s", num(self.window_s.t1)),
            ("t2_s", num(self.window_s.t2)),
            ("t3_s", num(self.window_s.t3)),
            ("excess_b", num(self.excess_b)),
            ("excess_s", num(self.excess_s)),
            ("test_b", num(self.test_b)),
            ("test_s", num(self.test_s)),
            ("test_b_upper", num(self.test_b_upper)),
            ("test_s_lower", num(self.test_s_lower)),
            ("c_alpha", num(self.c_alpha)),
            ("general_rhs", num(self.general_rhs)),
            ("bound_rhs", num(self.bound_rhs)),
            ("half_level_b", b(self.half_level_b)),
            ("half_level_s", b(self.half_level_s)),
            ("lemma_big_energy", b(self.lemma_big_energy)),
            ("lemma_big_epsilon", b(self.lemma_big_epsilon)),
            ("lemma_small_energy", b(self.lemma_small_energy)),
            ("lemma_small_epsilon", b(self.lemma_small_epsilon)),
            ("distinct_eigenvalues", b(a.distinct_eigenvalues)),
            ("rate_ordering", b(a.rate_ordering)),
            ("nonzero_init", b(a.nonzero_init)),
            ("alpha_below_alpha_1", b(a.alpha_below_alpha_1)),
            ("model_error_ok", b(a.model_error_ok)),
            ("general_holds", b(self.general_holds)),
            ("verdict", b(self.verdict)),
            ("failure", String::from(self.failure.map_or("", |f| f.as_str()))),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gd::run_to_level_set;
    use crate::quadratic::QuadraticObjective;
    use alloc::vec;

    fn fig2() -> Spectrum {
        Spectrum::diagonal(&[1.0, 0.9, 0.3, 0.2]).unwrap()
    }

    #[test]
    fn attenuation_values() {
        assert_eq!(attenuation(2.0, 0.5), 0.0);
        assert_eq!(attenuation(2.0, 1.0), 1.0);
        let eta = 2.0 / 1.2;
        assert!((attenuation(eta, 1.0) - attenuation(eta, 0.2)).abs() < 1e-15);
    }

    #[test]
    fn classify_on_fig2_spectrum() {
        let s = fig2();
        assert_eq!(classify_rate(1.0, &s).kind, RegimeKind::Small);
        assert_eq!(classify_rate(1.9, &s).kind, RegimeKind::Big);
        assert_eq!(classify_rate(2.05, &s).kind, RegimeKind::Divergent);
        assert_eq!(classify_rate(2.0, &s).kind, RegimeKind::Boundary);
        assert_eq!(classify_rate(2.0 / 1.2, &s).kind, RegimeKind::Boundary);
    }

    #[test]
    fn second_attenuation_examples() {
        let s = fig2();
        let r = classify_rate(1.0, &s);
        assert!((second_attenuation(1.0, &s, &r).unwrap() - 0.7).abs() < 1e-15);
        let r = classify_rate(1.9, &s);
        assert!((second_attenuation(1.9, &s, &r).unwrap() - 0.71).abs() < 1e-15);
        let r = classify_rate(2.05, &s);
        assert_eq!(second_attenuation(2.05, &s, &r), Err(Error::WrongRegime));

        let two = Spectrum::diagonal(&[1.0, 0.2]).unwrap();
        let r = classify_rate(0.5, &two);
        assert_eq!(second_attenuation(0.5, &two, &r).unwrap(), 0.5);
        let r = classify_rate(1.9, &two);
        assert!((second_attenuation(1.9, &two, &r).unwrap() - attenuation(1.9, 0.2)).abs() < 1e-15);
    }

    #[test]
    fn complexity_gap_on_fig2() {
        let (gs, _) = complexity_bounds(&fig2(), 1.0, 1.9).unwrap();
        assert!((gs - (0.8f64 / 0.7).ln()).abs() < 1e-14);
    }

    #[test]
    fn epsilon_is_zero_on_leading_direction() {
        let s = fig2();
        let big = classify_rate(1.9, &s);
        assert_eq!(epsilon_ratio(&[3.0, 0.0, 0.0, 0.0], &big).unwrap(), 0.0);
        assert_eq!(epsilon_ratio(&[0.0, 1.0, 0.0, 0.0], &big), Err(Error::ZeroDenominator));
    }

    #[test]
    fn alpha_one_toy_fixture() {
        let s = Spectrum::diagonal(&[1.0, 0.2]).unwrap();
        let a = alpha_one(&s, &[1.0, 1.0], 0.5, 1.9, 1.0).unwrap();
        // N = ln(2·max(32, 20)·1 + 1/0.9 + 1/0.9), D = min(ln(0.9/0.5), ln(0.9/0.62)).
        let num = (64.0f64 + 2.0 / 0.9).ln();
        let den = (0.9f64 / 0.5).ln().min((0.9f64 / 0.62).ln());
        let expected = 0.1 * (-num / den).exp();
        assert!((a.value - expected).abs() <= 1e-14 * expected);
        assert!(a.value > 0.0 && a.value <= 0.1);
        assert_eq!(alpha_one(&s, &[0.0, 1.0], 0.5, 1.9, 1.0), Err(Error::ZeroInitialization));
    }

    #[test]
    fn halving_alpha_shifts_window() {
        let s = fig2();
        let r = classify_rate(1.9, &s);
        let iota = [1.0, 0.5, -0.3, 0.2];
        let w1 = step_window(&s, &iota, 1.9, 1e-4, 2.0, &r).unwrap();
        let w2 = step_window(&s, &iota, 1.9, 0.5e-4, 2.0, &r).unwrap();
        let shift = 0.5 * 2f64.ln() / (1.0f64 / 0.9).ln();
        assert!((w2.t2 - w1.t2 - shift).abs() < 1e-9);
        assert!((w2.t3 - w1.t3 - shift).abs() < 1e-9);
        assert_eq!(w1.t1, w2.t1);
    }

    fn shared_pair() -> ProblemPair {
        let s = Spectrum::diagonal(&[1.0, 0.5, 0.2]).unwrap();
        let f = QuadraticObjective::new(s.clone(), vec![0.0; 3], 0.0).unwrap();
        ProblemPair::new(f.clone(), f).unwrap()
    }

    #[test]
    fn assumption_verdicts() {
        let pair = shared_pair();
        let rep = check_assumptions(&pair, &[0.0, 1.0, 1.0], 0.5, 1.9, 1e-6).unwrap();
        assert!(!rep.nonzero_init);
        assert!(!rep.all());
        let rep = check_assumptions(&pair, &[1.0, 1.0, 1.0], 0.5, 1.9, 1e-6).unwrap();
        assert_eq!(rep.model_error, 0.0);
        assert!(rep.model_error_ok);
        assert!(rep.rate_ordering);
    }

    #[test]
    fn model_error_ratio_above_quarter_fails() {
        let s = Spectrum::diagonal(&[1.0, 0.5]).unwrap();
        let train = QuadraticObjective::new(s.clone(), vec![1.0, 0.0], 0.0).unwrap();
        let test = QuadraticObjective::new(s, vec![0.0, 0.0], 0.0).unwrap();
        let pair = ProblemPair::new(train, test).unwrap();
        let alpha = 0.5 / 0.3;
        let rep = check_assumptions(&pair, &[2.0, 1.0], 0.5, 1.9, alpha).unwrap();
        assert!((rep.model_error_ratio - 0.3).abs() < 1e-15);
        assert!(!rep.model_error_ok);
    }

    #[test]
    fn certificate_on_shared_quadratic() {
        let pair = shared_pair();
        let theta0 = [1.0, 1.0, 1.0];
        let alpha = 1e-8;
        let rs = run_to_level_set(pair.train(), &theta0, 0.5, alpha, 1_000_000).unwrap();
        let rb = run_to_level_set(pair.train(), &theta0, 1.9, alpha, 1_000_000).unwrap();
        let c = certify(&pair, &rs, &rb, alpha).unwrap();
        assert_eq!(c.bound_rhs, 34.0 * c.test_s);
        assert!(c.verdict);
        assert!(c.c_alpha >= 1.0);
        assert!(c.test_b <= c.test_b_upper);
        assert_eq!(certify(&pair, &rb, &rs, alpha), Err(Error::RegimeMismatch));
        assert!(matches!(certify(&pair, &rs, &rb, 2e-8), Err(Error::LevelSetMismatch)));
    }

    #[test]
    fn infinite_c_alpha_reports_model_error() {
        let s = Spectrum::diagonal(&[1.0, 0.5, 0.2]).unwrap();
        let train = QuadraticObjective::new(s.clone(), vec![1e-3, 0.0, 0.0], 0.0).unwrap();
        let test = QuadraticObjective::new(s, vec![0.0; 3], 0.0).unwrap();
        let pair = ProblemPair::new(train, test).unwrap();
        let alpha = 1e-8;
        let theta0 = [1.0, 1.0, 1.0];
        let rs = run_to_level_set(pair.train(), &theta0, 0.5, alpha, 1_000_000).unwrap();
        let rb = run_to_level_set(pair.train(), &theta0, 1.9, alpha, 1_000_000).unwrap();
        let c = certify(&pair, &rs, &rb, alpha).unwrap();
        assert!(c.c_alpha.is_infinite());
        assert!(!c.verdict);
        assert_eq!(c.failure, Some(FailureReason::ModelErrorTooLarge));
    }
}
