//! Compact real intervals and interval-valued time series.
//!
//! Intervals are stored as `(center, radius)`. Endpoints are derived. Arithmetic
//! follows Minkowski addition and scalar multiplication of sets, and second
//! moments are the sum of the center and radius components.

mod stats;

use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg};

use crate::error::{Error, Result};
use crate::fmath;

pub use stats::{mean_abs_center, sample_corr, sample_cov, sample_mean, sample_var, scalar_autocov};

/// A compact interval `[center − radius, center + radius]`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Interval {
    center: f64,
    radius: f64,
}

impl Interval {
    /// The degenerate interval `[0, 0]`, the Minkowski identity.
    pub const ZERO: Interval = Interval { center: 0.0, radius: 0.0 };

    pub fn new(center: f64, radius: f64) -> Result<Self> {
        if !center.is_finite() || !radius.is_finite() || radius < 0.0 {
            return Err(Error::InvalidInterval { center, radius });
        }
        Ok(Self { center, radius })
    }

    pub fn from_endpoints(lower: f64, upper: f64) -> Result<Self> {
        if !(lower <= upper) {
            return Err(Error::InvalidInterval {
                center: 0.5 * (lower + upper),
                radius: 0.5 * (upper - lower),
            });
        }
        Self::new(0.5 * (lower + upper), 0.5 * (upper - lower))
    }

    /// A point-valued (zero radius) interval.
    pub fn point(x: f64) -> Result<Self> {
        Self::new(x, 0.0)
    }

    #[inline]
    pub fn center(&self) -> f64 {
        self.center
    }

    #[inline]
    pub fn radius(&self) -> f64 {
        self.radius
    }

    #[inline]
    pub fn lower(&self) -> f64 {
        self.center - self.radius
    }

    #[inline]
    pub fn upper(&self) -> f64 {
        self.center + self.radius
    }

    /// Lebesgue measure of the interval, `2 · radius`.
    #[inline]
    pub fn length(&self) -> f64 {
        2.0 * self.radius
    }

    /// Support function at `u = ±1`: `s(−1) = −lower`, `s(+1) = upper`.
    pub fn support(&self, positive: bool) -> f64 {
        if positive {
            self.upper()
        } else {
            -self.lower()
        }
    }

    pub fn scale(self, c: f64) -> Self {
        Self {
            center: c * self.center,
            radius: c.abs() * self.radius,
        }
    }
}

impl Add for Interval {
    type Output = Interval;

    fn add(self, rhs: Interval) -> Interval {
        minkowski_add(self, rhs)
    }
}

impl Mul<Interval> for f64 {
    type Output = Interval;

    fn mul(self, rhs: Interval) -> Interval {
        rhs.scale(self)
    }
}

impl Neg for Interval {
    type Output = Interval;

    fn neg(self) -> Interval {
        self.scale(-1.0)
    }
}

/// Minkowski sum `{a + b : a ∈ A, b ∈ B}`.
pub fn minkowski_add(a: Interval, b: Interval) -> Interval {
    Interval {
        center: a.center + b.center,
        radius: a.radius + b.radius,
    }
}

/// Set image of `a` under `x ↦ c·x`.
pub fn scalar_mul(c: f64, a: Interval) -> Interval {
    a.scale(c)
}

/// Hausdorff distance, the larger of the two endpoint gaps.
pub fn hausdorff(a: Interval, b: Interval) -> f64 {
    let dl = (a.lower() - b.lower()).abs();
    let du = (a.upper() - b.upper()).abs();
    dl.max(du)
}

/// L² distance between support functions with the normalised counting measure on
/// `{−1, +1}`: the root mean square of the two endpoint gaps.
pub fn delta_metric(a: Interval, b: Interval) -> f64 {
    fmath::sqrt(delta_metric_sq(a, b))
}

/// Square of [`delta_metric`], computed without the square root.
pub fn delta_metric_sq(a: Interval, b: Interval) -> f64 {
    let dl = a.lower() - b.lower();
    let du = a.upper() - b.upper();
    0.5 * (dl * dl + du * du)
}

/// A time-indexed sequence of intervals.
///
/// Timestamps are opaque strictly increasing integers. Ingested data uses day
/// numbers, simulated paths use `1..=T`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RangeSeries {
    timestamps: Vec<i64>,
    intervals: Vec<Interval>,
}

impl RangeSeries {
    pub fn new(timestamps: Vec<i64>, intervals: Vec<Interval>) -> Result<Self> {
        if timestamps.len() != intervals.len() {
            return Err(Error::LengthMismatch {
                timestamps: timestamps.len(),
                intervals: intervals.len(),
            });
        }
        if let Some(i) = timestamps.windows(2).position(|w| w[1] <= w[0]) {
            return Err(Error::NonMonotoneTimestamps { index: i + 1 });
        }
        Ok(Self {
            timestamps,
            intervals,
        })
    }

    /// Series indexed `1..=n`.
    pub fn from_intervals(intervals: Vec<Interval>) -> Self {
        let timestamps = (1..=intervals.len() as i64).collect();
        Self {
            timestamps,
            intervals,
        }
    }

    /// Builds a series from aligned center and radius sequences.
    pub fn from_parts(centers: &[f64], radii: &[f64]) -> Result<Self> {
        if centers.len() != radii.len() {
            return Err(Error::LengthMismatch {
                timestamps: centers.len(),
                intervals: radii.len(),
            });
        }
        let intervals = centers
            .iter()
            .zip(radii)
            .map(|(&c, &r)| Interval::new(c, r))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_intervals(intervals))
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn timestamps(&self) -> &[i64] {
        &self.timestamps
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn get(&self, i: usize) -> Option<Interval> {
        self.intervals.get(i).copied()
    }

    pub fn centers(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        self.intervals.iter().map(Interval::center)
    }

    pub fn radii(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        self.intervals.iter().map(Interval::radius)
    }

    /// The first `n` observations.
    pub fn truncated(&self, n: usize) -> Self {
        let n = n.min(self.len());
        Self {
            timestamps: self.timestamps[..n].to_vec(),
            intervals: self.intervals[..n].to_vec(),
        }
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = (i64, Interval)> + '_ {
        self.timestamps
            .iter()
            .copied()
            .zip(self.intervals.iter().copied())
    }
}
