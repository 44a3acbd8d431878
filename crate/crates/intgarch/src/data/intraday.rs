use chrono::{DateTime, FixedOffset, NaiveDate, TimeDelta};
use intgarch_core::Error as ModelError;

use crate::error::{DataError, Result};

pub const DEFAULT_GRID_MINUTES: u32 = 5;

/// Ticks of one trading day.
#[derive(Debug, Clone, PartialEq)]
pub struct IntradaySeries {
    date: NaiveDate,
    ticks: Vec<(DateTime<FixedOffset>, f64)>,
}

impl IntradaySeries {
    /// Requires strictly increasing timestamps and positive finite prices.
    pub fn new(date: NaiveDate, ticks: Vec<(DateTime<FixedOffset>, f64)>) -> Result<Self> {
        for (row, w) in ticks.windows(2).enumerate() {
            if w[1].0 <= w[0].0 {
                return Err(ModelError::NonMonotoneTimestamps { index: row + 1 }.into());
            }
        }
        if let Some(row) = ticks.iter().position(|(_, p)| !(p.is_finite() && *p > 0.0)) {
            return Err(DataError::BadBar {
                row,
                reason: "intraday price must be positive and finite",
            });
        }
        Ok(Self { date, ticks })
    }

    pub fn date(&self) -> NaiveDate {
        self.date
    }

    pub fn ticks(&self) -> &[(DateTime<FixedOffset>, f64)] {
        &self.ticks
    }

    pub fn len(&self) -> usize {
        self.ticks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ticks.is_empty()
    }
}

/// Prices on the grid `t_0, t_0 + g, t_0 + 2g, …` up to the last tick, where
/// `t_0` is the first tick. Each grid price is the last tick at or before the grid time.
fn resample(day: &IntradaySeries, grid: TimeDelta) -> Vec<f64> {
    let ticks = day.ticks();
    let Some(&(open, _)) = ticks.first() else {
        return Vec::new();
    };
    let close = ticks[ticks.len() - 1].0;
    let mut out = Vec::new();
    let mut next = 0;
    let mut at = open;
    while at <= close {
        while next + 1 < ticks.len() && ticks[next + 1].0 <= at {
            next += 1;
        }
        out.push(ticks[next].1);
        at += grid;
    }
    out
}

/// `√Σ (log p_j − log p_{j−1})²` over the previous-tick grid prices.
pub fn realized_volatility(day: &IntradaySeries, grid_minutes: u32) -> Result<f64> {
    if grid_minutes == 0 {
        return Err(ModelError::ConfigError("grid must be at least one minute").into());
    }
    let prices = resample(day, TimeDelta::minutes(i64::from(grid_minutes)));
    if prices.len() < 2 {
        return Err(ModelError::InsufficientData {
            needed: 2,
            got: prices.len(),
        }
        .into());
    }
    let sum: f64 = prices
        .windows(2)
        .map(|w| {
            let r = w[1].ln() - w[0].ln();
            r * r
        })
        .sum();
    Ok(sum.sqrt())
}
