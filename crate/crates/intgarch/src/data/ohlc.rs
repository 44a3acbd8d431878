use chrono::NaiveDate;
use intgarch_core::{Error as ModelError, Interval, RangeSeries};

use super::date_to_timestamp;
use crate::error::{DataError, Result};

/// One daily bar.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DailyOhlc {
    pub date: NaiveDate,
    pub open: f64,
    pub high: f64,
    pub low: f64,
    pub close: f64,
}

impl DailyOhlc {
    /// Checks `0 < low ≤ open, close ≤ high`; `row` is reported on failure.
    pub fn validate(&self, row: usize) -> Result<()> {
        let prices = [self.open, self.high, self.low, self.close];
        if prices.iter().any(|p| !(p.is_finite() && *p > 0.0)) {
            return Err(DataError::BadBar {
                row,
                reason: "prices must be positive and finite",
            });
        }
        if self.low > self.open.min(self.close) || self.high < self.open.max(self.close) {
            return Err(DataError::BadBar {
                row,
                reason: "open and close must lie within [low, high]",
            });
        }
        Ok(())
    }

    /// `log(high / low)`.
    pub fn log_range(&self) -> f64 {
        self.high.ln() - self.low.ln()
    }
}

/// Daily return ranges `r_t = [log L_t − log H_{t−1}, log H_t − log L_{t−1}]`.
///
/// The first bar only serves as the lag, so `n` bars give `n − 1` intervals,
/// stamped with the later day. Consecutive rows are consecutive trading days.
pub fn return_ranges(days: &[DailyOhlc]) -> Result<RangeSeries> {
    if days.len() < 2 {
        return Err(ModelError::InsufficientData {
            needed: 2,
            got: days.len(),
        }
        .into());
    }
    for (row, d) in days.iter().enumerate() {
        d.validate(row)?;
        if row > 0 && d.date <= days[row - 1].date {
            return Err(ModelError::NonMonotoneTimestamps { index: row }.into());
        }
    }
    let mut timestamps = Vec::with_capacity(days.len() - 1);
    let mut intervals = Vec::with_capacity(days.len() - 1);
    for (row, pair) in days.windows(2).enumerate() {
        let (prev, cur) = (&pair[0], &pair[1]);
        let low = cur.low.ln() - prev.high.ln();
        let high = cur.high.ln() - prev.low.ln();
        let iv = Interval::from_endpoints(low, high).map_err(|_| DataError::BadBar {
            row: row + 1,
            reason: "return range has negative length",
        })?;
        timestamps.push(date_to_timestamp(cur.date));
        intervals.push(iv);
    }
    Ok(RangeSeries::new(timestamps, intervals)?)
}

/// Log close-to-close returns aligned with [`return_ranges`].
pub fn close_to_close_returns(days: &[DailyOhlc]) -> Vec<f64> {
    days.windows(2).map(|w| w[1].close.ln() - w[0].close.ln()).collect()
}

/// Sample quantile with linear interpolation between order statistics:
/// position `p (n − 1)` in the sorted sample.
pub fn quantile(values: &[f64], p: f64) -> Option<f64> {
    if values.is_empty() || !(0.0..=1.0).contains(&p) || values.iter().any(|v| v.is_nan()) {
        return None;
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let pos = p * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    Some(sorted[lo] + (pos - lo as f64) * (sorted[hi] - sorted[lo]))
}

/// Days whose range is long but whose center is small: length above the
/// full-sample 75% quantile of lengths and |center| below the 25% quantile of
/// |centers|.
pub fn flag_days(s: &RangeSeries) -> Vec<bool> {
    let lengths: Vec<f64> = s.intervals().iter().map(Interval::length).collect();
    let abs_centers: Vec<f64> = s.centers().map(f64::abs).collect();
    let (Some(long), Some(small)) = (quantile(&lengths, 0.75), quantile(&abs_centers, 0.25)) else {
        return Vec::new();
    };
    lengths
        .iter()
        .zip(&abs_centers)
        .map(|(&l, &c)| l > long && c < small)
        .collect()
}
