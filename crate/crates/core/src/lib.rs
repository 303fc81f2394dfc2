//! Numerical laboratory for the relaxation of spherically symmetric Skyrme
//! fields: the static soliton, its quasinormal ringing, long-time nonlinear
//! evolution and the third-order nonlinear tail.

pub mod cli;
pub mod error;
pub mod evolution;
pub mod fit;
pub mod perturbative;
pub mod radial;
pub mod skyrmion;
pub mod spectrum;

pub use error::{Error, Result};
