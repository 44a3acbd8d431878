//! Conditional least squares (CLS) estimation of Int-GARCH(1,1,1).
//!
//! The one-step prediction of `r_t` is `[−k h_t, k h_t]` and the objective is the
//! summed squared δ-metric between observation and prediction,
//!
//! ```text
//! L(θ) = Σ_t ½ [(λ_t − δ_t + k h_t)² + (λ_t + δ_t − k h_t)²] = Σ_t [λ_t² + (δ_t − k h_t)²].
//! ```
//!
//! `k` is held at its method-of-moments value and Newton–Raphson runs over
//! `(μ, α_1, β_1, γ_1)`. Note that `L` depends on `k` and `(μ, α_1, β_1)` only
//! through `k h_t`, so `k` is not separately identified by the CLS objective;
//! its scale comes from the moment conditions `E δ = k E h`, `E|λ| = √(2/π) E h`.
//!
//! Two derivative conventions are available, see [`GradientMode`].

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fmath::sqrt_2_over_pi;
use crate::intervals::{self, Interval, RangeSeries};
use crate::linalg::{cholesky_solve, outer_add, Mat4, Vec4};
use crate::moments::volatility_factor;
use crate::params::IntGarchParams;
use crate::simulate::H0Mode;

/// Shortest series [`fit`] accepts.
pub const MIN_FIT_LENGTH: usize = 30;

const MAX_RIDGE_DOUBLINGS: usize = 80;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum KHandling {
    /// `k` stays at its initial moment estimate.
    #[default]
    FixedAtInitial,
    /// After every Newton step over `(μ, α_1, β_1, γ_1)`, `k` is replaced by its
    /// one-dimensional CLS update `Σ δ_t h_t / Σ h_t²`.
    Alternating,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GradientMode {
    /// Lagged `h_{t−1}` is treated as data: gradient `2k Σ (k h_t − δ_t) v_t`
    /// and Hessian `2k² Σ v_t v_tᵀ` with `v_t = (1, |λ_{t−1}|, δ_{t−1}, h_{t−1})`.
    /// Steps are safeguarded on the frozen-lag surrogate, so the true loss
    /// may rise between iterations.
    Frozen,
    /// Derivatives propagate through the recursion, `J_t = v_t + γ_1 J_{t−1}`.
    /// The gradient is exact and the Hessian is the Gauss–Newton matrix
    /// `2k² Σ J_t J_tᵀ`. Steps are safeguarded on the true loss.
    #[default]
    ExactRecursive,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitConfig {
    pub max_iterations: usize,
    /// Convergence threshold on the sup-norm of the parameter update.
    pub step_tolerance: f64,
    /// Initial Levenberg ridge. Zero means an undamped Newton step is tried first.
    pub damping: f64,
    pub k_handling: KHandling,
    pub h0_mode: H0Mode,
    pub gradient_mode: GradientMode,
}

impl Default for FitConfig {
    fn default() -> Self {
        Self {
            max_iterations: 500,
            step_tolerance: 1e-8,
            damping: 0.0,
            k_handling: KHandling::FixedAtInitial,
            h0_mode: H0Mode::StationaryMean,
            gradient_mode: GradientMode::ExactRecursive,
        }
    }
}

impl FitConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_iterations == 0 {
            return Err(Error::ConfigError("max_iterations must be at least 1"));
        }
        if !(self.step_tolerance > 0.0) {
            return Err(Error::ConfigError("step_tolerance must be positive"));
        }
        if !(self.damping >= 0.0) || !self.damping.is_finite() {
            return Err(Error::ConfigError("damping must be finite and nonnegative"));
        }
        Ok(())
    }
}

/// Pre-sample values `(h_0, r_0)` for the scale recursion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FilterStart {
    pub h0: f64,
    pub r0: Interval,
}

impl FilterStart {
    /// `r_0` is the sample Aumann mean; `h_0` follows `mode`, where
    /// [`H0Mode::StationaryMean`] is the moment estimate `√(π/2) · mean|λ|` of `E h`.
    pub fn from_series(s: &RangeSeries, mode: H0Mode) -> Result<Self> {
        let r0 = intervals::sample_mean(s)?;
        let h0 = match mode {
            H0Mode::StationaryMean => intervals::mean_abs_center(s)? / sqrt_2_over_pi(),
            H0Mode::Zero => 0.0,
            H0Mode::Fixed(v) if v.is_finite() && v >= 0.0 => v,
            H0Mode::Fixed(_) => return Err(Error::ConfigError("fixed h0 must be finite and nonnegative")),
        };
        Ok(Self { h0, r0 })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitResult {
    pub params: IntGarchParams,
    pub initial: IntGarchParams,
    /// `true` when `k` was held at its initial estimate.
    pub k_fixed: bool,
    pub loss: f64,
    pub iterations: usize,
    pub converged: bool,
    /// Loss at the initial point and after every accepted step.
    pub loss_trace: Vec<f64>,
    /// Gradient over `(μ, α_1, β_1, γ_1)` at the estimate, in the configured mode.
    pub gradient: [f64; 4],
    /// Sup-norm of the gradient ignoring components that push a zero coordinate negative.
    pub projected_gradient_norm: f64,
    pub gradient_mode: GradientMode,
    pub start: FilterStart,
    pub h_path: Vec<f64>,
    /// `H_t = h_t · √(1 + k̂)`.
    pub volatility_path: Vec<f64>,
}

/// Conditional mean `E[r_t | F_{t−1}] = [−k h, k h]`.
pub fn predict_interval(p: &IntGarchParams, h: f64) -> Result<Interval> {
    if !(h > 0.0) || !h.is_finite() {
        return Err(Error::InvalidState("h must be positive and finite"));
    }
    Interval::new(0.0, p.k() * h)
}

/// Scale path `h_1..h_T` of the observed series, started from `start`.
///
/// Lags reaching before the first observation use `start.r0` and `start.h0`.
pub fn h_filter(p: &IntGarchParams, s: &RangeSeries, start: &FilterStart) -> Result<Vec<f64>> {
    if s.is_empty() {
        return Err(Error::EmptySeries);
    }
    let lags = p.max_lag();
    let n = s.len();
    let ivs = s.intervals();
    let abs_center = |j: usize| -> f64 {
        if j < lags {
            start.r0.center().abs()
        } else {
            ivs[j - lags].center().abs()
        }
    };
    let radius = |j: usize| -> f64 {
        if j < lags {
            start.r0.radius()
        } else {
            ivs[j - lags].radius()
        }
    };
    let mut h_ext = Vec::with_capacity(lags + n);
    h_ext.resize(lags, start.h0);
    for t in 0..n {
        let now = lags + t;
        let mut h = p.mu();
        for (i, a) in p.alpha().iter().enumerate() {
            h += a * abs_center(now - 1 - i);
        }
        for (i, b) in p.beta().iter().enumerate() {
            h += b * radius(now - 1 - i);
        }
        for (i, g) in p.gamma().iter().enumerate() {
            h += g * h_ext[now - 1 - i];
        }
        h_ext.push(h);
    }
    h_ext.drain(..lags);
    Ok(h_ext)
}

/// `L(θ)` with starting values resolved from `cfg.h0_mode`.
pub fn cls_loss(p: &IntGarchParams, s: &RangeSeries, cfg: &FitConfig) -> Result<f64> {
    let start = FilterStart::from_series(s, cfg.h0_mode)?;
    cls_loss_from(p, s, &start)
}

/// `L(θ) = Σ [λ_t² + (δ_t − k h_t)²]` with explicit starting values.
pub fn cls_loss_from(p: &IntGarchParams, s: &RangeSeries, start: &FilterStart) -> Result<f64> {
    let h = h_filter(p, s, start)?;
    let k = p.k();
    Ok(s
        .intervals()
        .iter()
        .zip(&h)
        .map(|(iv, &h)| {
            let res = iv.radius() - k * h;
            iv.center() * iv.center() + res * res
        })
        .sum())
}

/// Gradient of `L` over `(μ, α_1, β_1, γ_1)` with `k` fixed.
pub fn cls_gradient(p: &IntGarchParams, s: &RangeSeries, cfg: &FitConfig) -> Result<[f64; 4]> {
    let start = FilterStart::from_series(s, cfg.h0_mode)?;
    let (a, b, g) = p.first_order()?;
    let pass = Pass::run(s, &start, p.k(), [p.mu(), a, b, g], cfg.gradient_mode)?;
    Ok(pass.gradient)
}

/// Newton matrix over `(μ, α_1, β_1, γ_1)`: `2k² Σ v_t v_tᵀ` in frozen mode,
/// the Gauss–Newton matrix `2k² Σ J_t J_tᵀ` in exact mode.
pub fn cls_hessian(p: &IntGarchParams, s: &RangeSeries, cfg: &FitConfig) -> Result<[[f64; 4]; 4]> {
    let start = FilterStart::from_series(s, cfg.h0_mode)?;
    let (a, b, g) = p.first_order()?;
    let pass = Pass::run(s, &start, p.k(), [p.mu(), a, b, g], cfg.gradient_mode)?;
    Ok(pass.hessian)
}

/// Method-of-moments starting point:
/// `k⁰ = √(2/π) mean δ / mean|λ|`, `μ⁰ = 0.4 √(π/2) mean|λ|`,
/// `α⁰ = 0.2 √(π/2)`, `β⁰ = 0.2 / k⁰`, `γ⁰ = 0.2`.
pub fn initialize(s: &RangeSeries) -> Result<IntGarchParams> {
    let mean_abs = intervals::mean_abs_center(s)?;
    let mean_radius = intervals::sample_mean(s)?.radius();
    if !(mean_abs > 0.0) {
        return Err(Error::DegenerateSeries("mean absolute center is zero"));
    }
    if !(mean_radius > 0.0) {
        return Err(Error::DegenerateSeries("mean radius is zero"));
    }
    let s2p = sqrt_2_over_pi();
    let k0 = s2p * mean_radius / mean_abs;
    IntGarchParams::one_one_one(k0, 0.4 * mean_abs / s2p, 0.2 / s2p, 0.2 / k0, 0.2)
}

/// `H_t = h_t √(1 + k̂)` for a fitted model.
pub fn volatility_path(fr: &FitResult) -> Vec<f64> {
    let factor = volatility_factor(fr.params.k());
    fr.h_path.iter().map(|h| h * factor).collect()
}

/// Loss, derivatives and scale path at one parameter point.
struct Pass {
    loss: f64,
    gradient: Vec4,
    hessian: Mat4,
    h: Vec<f64>,
}

impl Pass {
    fn run(s: &RangeSeries, start: &FilterStart, k: f64, theta: Vec4, mode: GradientMode) -> Result<Self> {
        let [mu, a, b, g] = theta;
        let mut prev = (start.r0.center().abs(), start.r0.radius(), start.h0);
        let mut jac = [0.0f64; 4];
        let mut loss = 0.0;
        let mut gradient = [0.0f64; 4];
        let mut hessian = [[0.0f64; 4]; 4];
        let mut h_path = Vec::with_capacity(s.len());
        for iv in s.intervals() {
            let v = [1.0, prev.0, prev.1, prev.2];
            let h = mu + a * prev.0 + b * prev.1 + g * prev.2;
            match mode {
                GradientMode::Frozen => jac = v,
                GradientMode::ExactRecursive => {
                    for i in 0..4 {
                        jac[i] = v[i] + g * jac[i];
                    }
                }
            }
            let res = k * h - iv.radius();
            loss += iv.center() * iv.center() + res * res;
            for i in 0..4 {
                gradient[i] += 2.0 * k * res * jac[i];
            }
            outer_add(&mut hessian, &jac, 2.0 * k * k);
            h_path.push(h);
            prev = (iv.center().abs(), iv.radius(), h);
        }
        if !loss.is_finite() || gradient.iter().any(|x| !x.is_finite()) {
            return Err(Error::NumericalFailure("non-finite loss or gradient"));
        }
        Ok(Self {
            loss,
            gradient,
            hessian,
            h: h_path,
        })
    }
}

/// True loss at `theta`.
fn loss_at(s: &RangeSeries, start: &FilterStart, k: f64, theta: &Vec4) -> f64 {
    let [mu, a, b, g] = *theta;
    let mut prev = (start.r0.center().abs(), start.r0.radius(), start.h0);
    let mut loss = 0.0;
    for iv in s.intervals() {
        let h = mu + a * prev.0 + b * prev.1 + g * prev.2;
        let res = k * h - iv.radius();
        loss += iv.center() * iv.center() + res * res;
        prev = (iv.center().abs(), iv.radius(), h);
    }
    loss
}

/// Loss with the lagged scale frozen at `lagged_h` (`lagged_h[t] = h_{t−1}` of the reference point).
fn frozen_loss_at(s: &RangeSeries, start: &FilterStart, k: f64, theta: &Vec4, lagged_h: &[f64]) -> f64 {
    let [mu, a, b, g] = *theta;
    let mut prev = (start.r0.center().abs(), start.r0.radius());
    let mut loss = 0.0;
    for (iv, &h_lag) in s.intervals().iter().zip(lagged_h) {
        let h = mu + a * prev.0 + b * prev.1 + g * h_lag;
        let res = k * h - iv.radius();
        loss += iv.center() * iv.center() + res * res;
        prev = (iv.center().abs(), iv.radius());
    }
    loss
}

fn has_variation(xs: impl Iterator<Item = f64>) -> bool {
    let mut first = None;
    for x in xs {
        match first {
            None => first = Some(x),
            Some(f) if f != x => return true,
            _ => {}
        }
    }
    false
}

fn projected_norm(theta: &Vec4, grad: &Vec4, lower: &Vec4) -> f64 {
    (0..4)
        .filter(|&i| !(theta[i] <= lower[i] && grad[i] > 0.0))
        .map(|i| grad[i].abs())
        .fold(0.0, f64::max)
}

/// CLS estimate of Int-GARCH(1,1,1) by damped Newton–Raphson.
///
/// Each iteration solves `(H + ρ I) d = −g`, starting from `ρ = cfg.damping`
/// and doubling `ρ` until the step does not increase the safeguard objective
/// (see [`GradientMode`]). Negative coordinates are clipped to zero after each
/// step, and coordinates already on their bound whose gradient points outward
/// are held fixed for the step. Converges when the sup-norm of the update is below `cfg.step_tolerance`.
pub fn fit(s: &RangeSeries, cfg: &FitConfig) -> Result<FitResult> {
    cfg.validate()?;
    if s.len() < MIN_FIT_LENGTH {
        return Err(Error::InsufficientData {
            needed: MIN_FIT_LENGTH,
            got: s.len(),
        });
    }
    let initial = initialize(s)?;
    if !has_variation(s.centers().map(f64::abs)) || !has_variation(s.radii()) {
        return Err(Error::DegenerateSeries(
            "constant |center| or radius sequence; parameters are not identifiable",
        ));
    }
    let start = FilterStart::from_series(s, cfg.h0_mode)?;
    let (a0, b0, g0) = initial.first_order()?;
    let mu_floor = initial.mu() * 1e-9;
    let mut k = initial.k();
    let mut theta: Vec4 = [initial.mu(), a0, b0, g0];
    let mut pass = Pass::run(s, &start, k, theta, cfg.gradient_mode)?;
    let mut loss_trace = alloc::vec![pass.loss];
    let mut converged = false;
    let mut iterations = 0;

    while iterations < cfg.max_iterations {
        iterations += 1;
        let rhs = pass.gradient.map(|g| -g);
        let diag_scale = (0..4).map(|i| pass.hessian[i][i]).sum::<f64>() / 4.0;
        let base_ridge = (diag_scale * 1e-10).max(f64::MIN_POSITIVE);
        let lagged_h: Vec<f64> = match cfg.gradient_mode {
            GradientMode::Frozen => core::iter::once(start.h0)
                .chain(pass.h.iter().copied())
                .take(s.len())
                .collect(),
            GradientMode::ExactRecursive => Vec::new(),
        };

        // Coordinates on their bound with the gradient pushing outward stay fixed.
        let lower = [mu_floor, 0.0, 0.0, 0.0];
        let active: [bool; 4] = core::array::from_fn(|i| theta[i] <= lower[i] && pass.gradient[i] > 0.0);
        let mut rhs = rhs;
        let mut reduced = pass.hessian;
        for i in 0..4 {
            if active[i] {
                rhs[i] = 0.0;
                for j in 0..4 {
                    reduced[i][j] = 0.0;
                    reduced[j][i] = 0.0;
                }
                reduced[i][i] = 1.0;
            }
        }

        let mut ridge = cfg.damping;
        let mut accepted: Option<Vec4> = None;
        let mut solved_any = false;
        for _ in 0..=MAX_RIDGE_DOUBLINGS {
            let mut a = reduced;
            for (i, row) in a.iter_mut().enumerate() {
                row[i] += ridge;
            }
            if let Some(d) = cholesky_solve(&a, &rhs) {
                solved_any = true;
                let mut cand = theta;
                for i in 0..4 {
                    cand[i] = (theta[i] + d[i]).max(lower[i]);
                }
                let obj = match cfg.gradient_mode {
                    GradientMode::ExactRecursive => loss_at(s, &start, k, &cand),
                    GradientMode::Frozen => frozen_loss_at(s, &start, k, &cand, &lagged_h),
                };
                if obj.is_finite() && obj <= pass.loss {
                    accepted = Some(cand);
                    break;
                }
            }
            ridge = if ridge > 0.0 { ridge * 2.0 } else { base_ridge };
        }

        let next = match accepted {
            Some(c) => c,
            None if solved_any => theta,
            None => return Err(Error::SingularHessian),
        };
        let mut update = next
            .iter()
            .zip(&theta)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        theta = next;

        if cfg.k_handling == KHandling::Alternating {
            let h = &Pass::run(s, &start, k, theta, cfg.gradient_mode)?.h;
            let num: f64 = s.radii().zip(h).map(|(d, h)| d * h).sum();
            let den: f64 = h.iter().map(|h| h * h).sum();
            let k_new = num / den;
            if !(k_new > 0.0) || !k_new.is_finite() {
                return Err(Error::NumericalFailure("alternating k update left the positive range"));
            }
            update = update.max((k_new - k).abs());
            k = k_new;
        }

        pass = Pass::run(s, &start, k, theta, cfg.gradient_mode)?;
        loss_trace.push(pass.loss);
        if update < cfg.step_tolerance {
            converged = true;
            break;
        }
    }

    let params = IntGarchParams::one_one_one(k, theta[0], theta[1], theta[2], theta[3])?;
    let factor = volatility_factor(k);
    let volatility = pass.h.iter().map(|h| h * factor).collect();
    Ok(FitResult {
        params,
        initial,
        k_fixed: cfg.k_handling == KHandling::FixedAtInitial,
        loss: pass.loss,
        iterations,
        converged,
        loss_trace,
        gradient: pass.gradient,
        projected_gradient_norm: projected_norm(&theta, &pass.gradient, &[mu_floor, 0.0, 0.0, 0.0]),
        gradient_mode: cfg.gradient_mode,
        start,
        h_path: pass.h,
        volatility_path: volatility,
    })
}
