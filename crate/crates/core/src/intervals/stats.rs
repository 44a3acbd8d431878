//! Sample moments of interval series.
//!
//! Divisor conventions: `sample_var` (and `sample_cov` at lag 0) divide by `n − 1`.
//! Lagged autocovariances divide by `n` after centering on the full-sample mean.
//! `sample_corr` divides numerator and denominator by `n`, so lag 0 is exactly 1.

use super::{Interval, RangeSeries};
use crate::error::{Error, Result};

fn mean(xs: impl ExactSizeIterator<Item = f64>) -> f64 {
    let n = xs.len() as f64;
    xs.sum::<f64>() / n
}

/// Aumann mean of the sample: `[mean λ − mean δ, mean λ + mean δ]`.
pub fn sample_mean(s: &RangeSeries) -> Result<Interval> {
    if s.is_empty() {
        return Err(Error::EmptySeries);
    }
    Interval::new(mean(s.centers()), mean(s.radii()))
}

/// Sample mean of `|λ_t|`.
pub fn mean_abs_center(s: &RangeSeries) -> Result<f64> {
    if s.is_empty() {
        return Err(Error::EmptySeries);
    }
    Ok(mean(s.centers().map(f64::abs)))
}

/// Sample variance of the centers plus sample variance of the radii (divisor `n − 1`).
pub fn sample_var(s: &RangeSeries) -> Result<f64> {
    let n = s.len();
    if n < 2 {
        return Err(Error::InsufficientData { needed: 2, got: n });
    }
    let mc = mean(s.centers());
    let mr = mean(s.radii());
    let ss: f64 = s
        .intervals()
        .iter()
        .map(|iv| {
            let dc = iv.center() - mc;
            let dr = iv.radius() - mr;
            dc * dc + dr * dr
        })
        .sum();
    Ok(ss / (n as f64 - 1.0))
}

/// Lag-`lag` autocovariance of a scalar sequence: `(1/n) Σ (x_t − x̄)(x_{t+lag} − x̄)`.
///
/// Symmetric in the sign of `lag`. Requires `len > |lag|`.
pub fn scalar_autocov(xs: &[f64], lag: i64) -> Result<f64> {
    let n = xs.len();
    let h = lag.unsigned_abs() as usize;
    if n == 0 || h >= n {
        return Err(Error::InsufficientData { needed: h + 1, got: n });
    }
    let m = xs.iter().sum::<f64>() / n as f64;
    let acc: f64 = xs[..n - h]
        .iter()
        .zip(&xs[h..])
        .map(|(a, b)| (a - m) * (b - m))
        .sum();
    Ok(acc / n as f64)
}

fn component_autocov(s: &RangeSeries, lag: i64) -> (f64, f64) {
    let n = s.len();
    let h = lag.unsigned_abs() as usize;
    let mc = mean(s.centers());
    let mr = mean(s.radii());
    let ivs = s.intervals();
    let (mut cc, mut rr) = (0.0, 0.0);
    for (a, b) in ivs[..n - h].iter().zip(&ivs[h..]) {
        cc += (a.center() - mc) * (b.center() - mc);
        rr += (a.radius() - mr) * (b.radius() - mr);
    }
    (cc / n as f64, rr / n as f64)
}

fn check_lag(s: &RangeSeries, lag: i64) -> Result<()> {
    let needed = lag.unsigned_abs() as usize + 2;
    if s.len() < needed {
        return Err(Error::InsufficientData { needed, got: s.len() });
    }
    Ok(())
}

/// Interval autocovariance at `lag`: center autocovariance plus radius autocovariance.
///
/// Lag 0 returns [`sample_var`].
pub fn sample_cov(s: &RangeSeries, lag: i64) -> Result<f64> {
    check_lag(s, lag)?;
    if lag == 0 {
        return sample_var(s);
    }
    let (c, r) = component_autocov(s, lag);
    Ok(c + r)
}

/// Sample interval autocorrelation `(γ̂_λ(lag) + γ̂_δ(lag)) / (γ̂_λ(0) + γ̂_δ(0))`.
pub fn sample_corr(s: &RangeSeries, lag: i64) -> Result<f64> {
    check_lag(s, lag)?;
    let (c0, r0) = component_autocov(s, 0);
    let denom = c0 + r0;
    if !(denom > 0.0) {
        return Err(Error::DegenerateSeries("interval series has zero sample variance"));
    }
    if lag == 0 {
        return Ok(1.0);
    }
    let (c, r) = component_autocov(s, lag);
    Ok((c + r) / denom)
}
