//! Parallel Monte Carlo drivers: simulation ensembles and the repeated
//! simulate-then-fit study.

use rayon::prelude::*;

use intgarch_core::simulate::replication_config;
use intgarch_core::{fit, simulate, FitConfig, FitResult, IntGarchParams, Result, SimConfig, SimOutput};

pub const PARAMETER_NAMES: [&str; 5] = ["k", "mu", "alpha1", "beta1", "gamma1"];

/// [`intgarch_core::simulate_ensemble`] with replications run on the rayon pool.
/// Output is identical to the sequential version.
pub fn simulate_ensemble_parallel(cfg: &SimConfig, replications: usize) -> Result<Vec<SimOutput>> {
    if replications == 0 {
        return Err(intgarch_core::Error::ConfigError("replications must be at least 1"));
    }
    (0..replications as u64)
        .into_par_iter()
        .map(|i| simulate(&replication_config(cfg, i)))
        .collect()
}

/// Monte Carlo summary of one parameter.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct ParameterSummary {
    pub parameter: &'static str,
    pub truth: f64,
    pub mean_estimate: f64,
    /// Average over replications of `|estimate − truth|`.
    pub mean_abs_bias: f64,
    /// `|mean estimate − truth|`.
    pub abs_mean_bias: f64,
    /// Standard deviation of the estimates (divisor `n − 1`).
    pub empirical_sd: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StudyReport {
    pub rows: Vec<ParameterSummary>,
    /// `(k, μ, α_1, β_1, γ_1)` per replication, in replication order.
    pub estimates: Vec<[f64; 5]>,
    pub non_converged: usize,
}

/// The simulation study protocol: `replications` paths of `length` steps from
/// `h_0 = 0`, `r_0 = E r_t` without burn-in, each fitted with `fit_cfg`.
///
/// Replication `i` uses the seed derived from `(seed, i)`, so the report does
/// not depend on thread scheduling. `on_replication` is called as fits finish.
pub fn run_study(
    params: &IntGarchParams,
    replications: usize,
    length: usize,
    seed: u64,
    fit_cfg: &FitConfig,
    on_replication: impl Fn(usize, &FitResult) + Sync,
) -> Result<StudyReport> {
    let (a, b, g) = params.first_order()?;
    if replications < 2 {
        return Err(intgarch_core::Error::ConfigError("a study needs at least 2 replications"));
    }
    let base = SimConfig::study(params.clone(), length, seed);
    let fits: Vec<FitResult> = (0..replications as u64)
        .into_par_iter()
        .map(|i| {
            let out = simulate(&replication_config(&base, i))?;
            let fr = fit(&out.series, fit_cfg)?;
            on_replication(i as usize, &fr);
            Ok(fr)
        })
        .collect::<Result<_>>()?;

    let truth = [params.k(), params.mu(), a, b, g];
    let estimates: Vec<[f64; 5]> = fits
        .iter()
        .map(|fr| {
            let p = &fr.params;
            [p.k(), p.mu(), p.alpha()[0], p.beta()[0], p.gamma()[0]]
        })
        .collect();
    let n = estimates.len() as f64;
    let rows = (0..5)
        .map(|j| {
            let mean = estimates.iter().map(|e| e[j]).sum::<f64>() / n;
            let mean_abs_bias = estimates.iter().map(|e| (e[j] - truth[j]).abs()).sum::<f64>() / n;
            let var = estimates.iter().map(|e| (e[j] - mean).powi(2)).sum::<f64>() / (n - 1.0);
            ParameterSummary {
                parameter: PARAMETER_NAMES[j],
                truth: truth[j],
                mean_estimate: mean,
                mean_abs_bias,
                abs_mean_bias: (mean - truth[j]).abs(),
                empirical_sd: var.sqrt(),
            }
        })
        .collect();
    Ok(StudyReport {
        rows,
        estimates,
        non_converged: fits.iter().filter(|f| !f.converged).count(),
    })
}
