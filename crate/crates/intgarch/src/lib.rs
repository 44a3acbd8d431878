//! File formats, market-data transforms, Monte Carlo harnesses and the
//! command-line front end for interval-valued GARCH models.

pub mod cli;
pub mod data;
pub mod error;
pub mod harness;

pub use error::{DataError, Result};
pub use intgarch_core as model;
