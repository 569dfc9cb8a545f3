//! Exact computations with A-hypergeometric series attached to lattice
//! point configurations, and integrality tests for factorial ratios.

pub mod error;
pub mod factorial;
pub mod geometry;
pub mod json;
pub mod linalg;
pub mod logseries;
pub mod par;
pub mod rational;
pub mod relations;
pub mod series;

pub use error::{Error, Result};
pub use rational::Rational;
