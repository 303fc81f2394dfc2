//! Decay laws from observer series: damped-sinusoid ringdown fits and
//! power-law tails with a first correction.

mod power;
mod ringdown;

pub use power::{estimate_tail_coefficient, fit_power_law, floor_threshold, log_log_slope, suggest_tail_window, PowerLawFit, TailCoefficient};
pub use ringdown::{fit_ringdown, RingdownFit};
