//! Gaussian quasi-maximum-likelihood GARCH(1,1) in variance form,
//! `σ²_t = ω + a e²_{t−1} + b σ²_{t−1}` on demeaned returns `e_t`.

use argmin::core::{CostFunction, Executor};
use argmin::solver::neldermead::NelderMead;
use intgarch_core::Error as ModelError;

use crate::error::Result;

pub const MIN_GARCH_LENGTH: usize = 50;

/// Upper bound on `a + b`.
const MAX_PERSISTENCE: f64 = 0.9999;

#[derive(Debug, Clone, PartialEq)]
pub struct Garch11Fit {
    pub omega: f64,
    pub alpha: f64,
    pub beta: f64,
    /// Sample mean removed before fitting.
    pub mean: f64,
    /// Conditional standard deviations `σ_t`, one per return.
    pub sigma: Vec<f64>,
    /// `½ Σ (log σ²_t + e²_t / σ²_t)`.
    pub neg_log_likelihood: f64,
}

struct Problem<'a> {
    resid: &'a [f64],
    var: f64,
}

impl Problem<'_> {
    /// Unconstrained `x` to `(ω, a, b)`. `x = 0` puts the unconditional variance
    /// at the sample variance.
    fn params(&self, x: &[f64]) -> (f64, f64, f64) {
        let p = MAX_PERSISTENCE * logistic(x[1]);
        let a = p * logistic(x[2]);
        (self.var * (1.0 - p) * x[0].exp(), a, p - a)
    }

    fn variances(&self, omega: f64, a: f64, b: f64) -> Vec<f64> {
        let mut s2 = self.var;
        let mut out = Vec::with_capacity(self.resid.len());
        for t in 0..self.resid.len() {
            if t > 0 {
                let prev = self.resid[t - 1];
                s2 = omega + a * prev * prev + b * s2;
            }
            out.push(s2);
        }
        out
    }

    fn nll(&self, omega: f64, a: f64, b: f64) -> f64 {
        self.variances(omega, a, b)
            .iter()
            .zip(self.resid)
            .map(|(s2, e)| 0.5 * (s2.ln() + e * e / s2))
            .sum()
    }
}

impl CostFunction for Problem<'_> {
    type Param = Vec<f64>;
    type Output = f64;

    fn cost(&self, x: &Self::Param) -> std::result::Result<f64, argmin::core::Error> {
        let (omega, a, b) = self.params(x);
        let v = self.nll(omega, a, b);
        Ok(if v.is_finite() { v } else { f64::MAX })
    }
}

fn logistic(x: f64) -> f64 {
    1.0 / (1.0 + (-x).exp())
}

fn logit(p: f64) -> f64 {
    (p / (1.0 - p)).ln()
}

fn simplex_around(x: &[f64], step: f64) -> Vec<Vec<f64>> {
    let mut pts = vec![x.to_vec()];
    for i in 0..x.len() {
        let mut p = x.to_vec();
        p[i] += step;
        pts.push(p);
    }
    pts
}

/// Fits GARCH(1,1) by Nelder–Mead on a reparameterisation that keeps
/// `ω > 0`, `a, b ≥ 0` and `a + b < 1`. The search restarts from its best point
/// until the likelihood stops improving.
pub fn fit_garch11(returns: &[f64]) -> Result<Garch11Fit> {
    if returns.len() < MIN_GARCH_LENGTH {
        return Err(ModelError::InsufficientData {
            needed: MIN_GARCH_LENGTH,
            got: returns.len(),
        }
        .into());
    }
    if returns.iter().any(|r| !r.is_finite()) {
        return Err(ModelError::NumericalFailure("non-finite return").into());
    }
    let n = returns.len() as f64;
    let mean = returns.iter().sum::<f64>() / n;
    let resid: Vec<f64> = returns.iter().map(|r| r - mean).collect();
    let var = resid.iter().map(|e| e * e).sum::<f64>() / n;
    let scale = returns.iter().fold(0.0f64, |m, r| m.max(r.abs()));
    if !(var.sqrt() > 64.0 * f64::EPSILON * scale) {
        return Err(ModelError::DegenerateSeries("returns have zero variance").into());
    }
    let problem = Problem { resid: &resid, var };

    let p0 = 0.95 / MAX_PERSISTENCE;
    let mut best = vec![0.0, logit(p0), logit(0.05 / 0.95)];
    let mut best_cost = problem.cost(&best).unwrap_or(f64::MAX);
    for _ in 0..8 {
        let solver = NelderMead::new(simplex_around(&best, 0.5))
            .with_sd_tolerance(1e-12)
            .map_err(|_| ModelError::NumericalFailure("invalid optimizer tolerance"))?;
        let res = Executor::new(Problem { resid: &resid, var }, solver)
            .configure(|state| state.max_iters(2000))
            .run()
            .map_err(|_| ModelError::NumericalFailure("GARCH(1,1) optimizer failed"))?;
        let state = res.state();
        let (Some(x), cost) = (state.best_param.clone(), state.best_cost) else {
            return Err(ModelError::NumericalFailure("GARCH(1,1) optimizer returned no point").into());
        };
        let improved = cost < best_cost - 1e-10 * best_cost.abs().max(1.0);
        if cost < best_cost {
            best = x;
            best_cost = cost;
        }
        if !improved {
            break;
        }
    }
    if !(best_cost < f64::MAX) {
        return Err(ModelError::NumericalFailure("GARCH(1,1) likelihood is not finite").into());
    }
    let (omega, alpha, beta) = problem.params(&best);
    let sigma = problem.variances(omega, alpha, beta).into_iter().map(f64::sqrt).collect();
    Ok(Garch11Fit {
        omega,
        alpha,
        beta,
        mean,
        sigma,
        neg_log_likelihood: best_cost,
    })
}
