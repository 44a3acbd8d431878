use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid interval: center {center}, radius {radius}")]
    InvalidInterval { center: f64, radius: f64 },
    #[error("series is empty")]
    EmptySeries,
    #[error("insufficient data: need at least {needed} observations, got {got}")]
    InsufficientData { needed: usize, got: usize },
    #[error("degenerate series: {0}")]
    DegenerateSeries(&'static str),
    #[error("timestamps and intervals differ in length ({timestamps} vs {intervals})")]
    LengthMismatch { timestamps: usize, intervals: usize },
    #[error("timestamps not strictly increasing at index {index}")]
    NonMonotoneTimestamps { index: usize },
    #[error("invalid parameters: {0}")]
    InvalidParams(&'static str),
    #[error("operation supports only Int-GARCH(1,1,1), got orders ({p},{q},{w})")]
    UnsupportedOrder { p: usize, q: usize, w: usize },
    #[error("not mean stationary: C1 = {c1} >= 1")]
    NotMeanStationary { c1: f64 },
    #[error("not weakly stationary: requires C2 < C1 < 1, got C1 = {c1}, C2 = {c2}")]
    NotWeaklyStationary { c1: f64, c2: f64 },
    #[error("invalid lag {0}")]
    InvalidLag(i64),
    #[error("invalid state: {0}")]
    InvalidState(&'static str),
    #[error("invalid configuration: {0}")]
    ConfigError(&'static str),
    #[error("simulation diverged at step {step} (h = {h})")]
    Diverged { step: usize, h: f64 },
    #[error("numerical failure: {0}")]
    NumericalFailure(&'static str),
    #[error("Hessian is singular even after damping")]
    SingularHessian,
}
