//! Interval-valued GARCH (Int-GARCH) models for `[low, high]` return-range processes.
//!
//! An observation is a random interval `r_t = [λ_t − δ_t, λ_t + δ_t]` driven by
//!
//! ```text
//! r_t = h_t · [ε_t − η_t, ε_t + η_t],   ε_t ~ N(0, 1),   η_t ~ Γ(k, 1)
//! h_t = μ + Σ α_i |λ_{t−i}| + Σ β_i δ_{t−i} + Σ γ_i h_{t−i}
//! ```
//!
//! The crate is `no_std` (it needs `alloc`) and is organised as:
//!
//! - [`intervals`]: interval arithmetic, metrics and sample statistics of interval series,
//! - [`moments`]: closed-form moments, stationarity tests and the theoretical ACF,
//! - [`simulate`]: reproducible path simulation,
//! - [`estimate`]: conditional least squares estimation by Newton–Raphson.
//!
//! File formats, data ingestion and the command line live in the `intgarch` crate.
#![no_std]

extern crate alloc;

mod error;
mod fmath;
mod linalg;

pub mod estimate;
pub mod intervals;
pub mod moments;
pub mod params;
pub mod simulate;

pub use error::{Error, Result};
pub use estimate::{fit, FitConfig, FitResult, GradientMode, KHandling};
pub use intervals::{Interval, RangeSeries};
pub use moments::MomentSummary;
pub use params::{IntGarchParams, ReferenceModel};
pub use simulate::{simulate, simulate_ensemble, H0Mode, R0Mode, SimConfig, SimOutput};
