//! Closed-form moments of the Int-GARCH process.
//!
//! With `x_t = α_1|ε_t| + β_1 η_t + γ_1` the (1,1,1) scale recursion reads
//! `h_{t+1} = μ + x_t h_t`, and everything below follows from the first two
//! moments `C_1 = E x_t` and `C_2 = E x_t²`:
//!
//! - mean stationarity iff `C_1 < 1`, then `E h = μ / (1 − C_1)`,
//! - weak stationarity iff `C_2 < C_1 < 1`, then
//!   `E h² = μ² (C_1 + 1) / ((C_2 − 1)(C_1 − 1))`,
//! - `Var r = (1 + k + k²) E h² − k² (E h)²`,
//! - `Cov(r_t, r_{t+s}) = k E(h_t h_{t+s} η_t) − k² (E h)²` for `s ≠ 0`.
//!
//! Only the first moment is available for general orders.
//!
//! Boundary equalities (`C_1 = 1`, `C_2 = C_1`) are non-stationary. The all-zero
//! coefficient model has `C_1 = C_2 = 0` and fails the strict test; it is
//! admitted only through [`Moments::allow_degenerate`].

use crate::error::{Error, Result};
use crate::fmath::{powu, sqrt, sqrt_2_over_pi};
use crate::intervals::Interval;
use crate::params::IntGarchParams;

/// Closed-form moment quantities of a weakly stationary Int-GARCH(1,1,1) model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentSummary {
    pub c1: f64,
    pub c2: f64,
    pub mean_h: f64,
    pub second_moment_h: f64,
    pub mean_r: Interval,
    pub var_r: f64,
    pub eta_x: f64,
}

/// `C_1 = E x_t = Σ_i (α_i √(2/π) + β_i k + γ_i)`, valid for any orders.
pub fn c1(p: &IntGarchParams) -> f64 {
    let s = sqrt_2_over_pi();
    let k = p.k();
    p.alpha().iter().map(|a| a * s).sum::<f64>()
        + p.beta().iter().map(|b| b * k).sum::<f64>()
        + p.gamma().iter().sum::<f64>()
}

/// `C_2 = E x_t²` for Int-GARCH(1,1,1).
pub fn c2(p: &IntGarchParams) -> Result<f64> {
    let (a, b, g) = p.first_order()?;
    let k = p.k();
    let s = sqrt_2_over_pi();
    Ok(a * a
        + b * b * (k + k * k)
        + g * g
        + 2.0 * a * b * s * k
        + 2.0 * a * g * s
        + 2.0 * b * g * k)
}

/// `E(η_t x_t)` for Int-GARCH(1,1,1).
pub fn eta_x(p: &IntGarchParams) -> Result<f64> {
    let (a, b, g) = p.first_order()?;
    let k = p.k();
    Ok(a * sqrt_2_over_pi() * k + b * (k + k * k) + g * k)
}

/// `C_1 < 1` (strict).
pub fn is_mean_stationary(p: &IntGarchParams) -> bool {
    c1(p) < 1.0
}

/// `C_2 < C_1 < 1` (strict). Requires order (1,1,1).
pub fn is_weakly_stationary(p: &IntGarchParams) -> Result<bool> {
    let c1 = c1(p);
    let c2 = c2(p)?;
    Ok(c2 < c1 && c1 < 1.0)
}

/// `H_t / h_t = √(1 + k)`, from `Var(h ε) + Var(h η) = h² (1 + k)`.
pub fn conditional_volatility_factor(p: &IntGarchParams) -> f64 {
    volatility_factor(p.k())
}

pub(crate) fn volatility_factor(k: f64) -> f64 {
    sqrt(1.0 + k)
}

pub fn mean_h(p: &IntGarchParams) -> Result<f64> {
    Moments::new(p).mean_h()
}

pub fn mean_r(p: &IntGarchParams) -> Result<Interval> {
    Moments::new(p).mean_r()
}

pub fn second_moment_h(p: &IntGarchParams) -> Result<f64> {
    Moments::new(p).second_moment_h()
}

pub fn var_r(p: &IntGarchParams) -> Result<f64> {
    Moments::new(p).var_r()
}

pub fn h_h_eta(p: &IntGarchParams, s: i64) -> Result<f64> {
    Moments::new(p).h_h_eta(s)
}

pub fn autocov(p: &IntGarchParams, s: i64) -> Result<f64> {
    Moments::new(p).autocov(s)
}

pub fn acf(p: &IntGarchParams, s: i64) -> Result<f64> {
    Moments::new(p).acf(s)
}

pub fn summary(p: &IntGarchParams) -> Result<MomentSummary> {
    Moments::new(p).summary()
}

/// Moment calculator with a configurable stationarity gate.
#[derive(Debug, Clone, Copy)]
pub struct Moments<'a> {
    params: &'a IntGarchParams,
    allow_degenerate: bool,
}

impl<'a> Moments<'a> {
    pub fn new(params: &'a IntGarchParams) -> Self {
        Self {
            params,
            allow_degenerate: false,
        }
    }

    /// Lets the all-zero coefficient model (`C_1 = C_2 = 0`) through the
    /// weak-stationarity gate. Its moment formulas are non-singular.
    pub fn allow_degenerate(mut self, yes: bool) -> Self {
        self.allow_degenerate = yes;
        self
    }

    fn degenerate_ok(&self) -> bool {
        self.allow_degenerate && self.params.all_coefficients_zero()
    }

    fn mean_gate(&self) -> Result<f64> {
        let c1 = c1(self.params);
        if c1 < 1.0 {
            Ok(c1)
        } else {
            Err(Error::NotMeanStationary { c1 })
        }
    }

    fn weak_gate(&self) -> Result<(f64, f64)> {
        let c1 = c1(self.params);
        let c2 = c2(self.params)?;
        if (c2 < c1 && c1 < 1.0) || self.degenerate_ok() {
            Ok((c1, c2))
        } else {
            Err(Error::NotWeaklyStationary { c1, c2 })
        }
    }

    /// `E h_t = μ / (1 − C_1)`.
    pub fn mean_h(&self) -> Result<f64> {
        let c1 = self.mean_gate()?;
        Ok(self.params.mu() / (1.0 - c1))
    }

    /// Aumann mean `E r_t = [−k E h, k E h]`.
    pub fn mean_r(&self) -> Result<Interval> {
        let m = self.mean_h()?;
        Interval::new(0.0, self.params.k() * m)
    }

    /// `E h_t² = μ² (C_1 + 1) / ((C_2 − 1)(C_1 − 1))`.
    pub fn second_moment_h(&self) -> Result<f64> {
        let (c1, c2) = self.weak_gate()?;
        let mu = self.params.mu();
        Ok(mu * mu * (c1 + 1.0) / ((c2 - 1.0) * (c1 - 1.0)))
    }

    /// `Var r_t = (1 + k + k²) E h² − k² (E h)²`.
    pub fn var_r(&self) -> Result<f64> {
        let eh2 = self.second_moment_h()?;
        let eh = self.mean_h()?;
        let k = self.params.k();
        Ok((1.0 + k + k * k) * eh2 - k * k * eh * eh)
    }

    /// `E(h_t h_{t+s} η_t)` for `s ≥ 1`.
    pub fn h_h_eta(&self, s: i64) -> Result<f64> {
        if s < 1 {
            return Err(Error::InvalidLag(s));
        }
        let (c1, c2) = self.weak_gate()?;
        let (a, b, g) = self.params.first_order()?;
        let k = self.params.k();
        let mu = self.params.mu();
        let s = u32::try_from(s).map_err(|_| Error::InvalidLag(s))?;
        let c1s = powu(c1, s);
        let c1s1 = powu(c1, s - 1);
        let bracket = a * sqrt_2_over_pi() + b * (1.0 + k) + g;
        Ok(mu * mu * k / (c1 - 1.0)
            * (-(c1s - 1.0) / (c1 - 1.0) + (c1s + c1s1) / (c2 - 1.0) * bracket))
    }

    /// Interval autocovariance `Cov(r_t, r_{t+s})`, symmetric in `s`.
    pub fn autocov(&self, s: i64) -> Result<f64> {
        if s == 0 {
            return self.var_r();
        }
        let k = self.params.k();
        let eh = self.mean_h()?;
        Ok(k * self.h_h_eta(s.abs())? - k * k * eh * eh)
    }

    /// Interval autocorrelation `ρ(s) = γ(s) / γ(0)`.
    pub fn acf(&self, s: i64) -> Result<f64> {
        let v = self.var_r()?;
        if s == 0 {
            return Ok(1.0);
        }
        Ok(self.autocov(s)? / v)
    }

    pub fn summary(&self) -> Result<MomentSummary> {
        let (c1, c2) = self.weak_gate()?;
        Ok(MomentSummary {
            c1,
            c2,
            mean_h: self.mean_h()?,
            second_moment_h: self.second_moment_h()?,
            mean_r: self.mean_r()?,
            var_r: self.var_r()?,
            eta_x: eta_x(self.params)?,
        })
    }
}
