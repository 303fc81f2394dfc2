//! Long-time evolution of the radial field equation and of its
//! linearization about the soliton.

mod data;
mod equilibrium;
mod linear;
mod rhs;
mod run;
mod state;

pub use data::{make_initial_data, InitialData};
pub use equilibrium::discrete_equilibrium;
pub use linear::{evolve_linear, LinearData};
pub use rhs::nonlinear_rhs;
pub use run::{evolve, EvolveConfig, Evolution, ObserverSpec, Quantity};
pub use state::{energy, EnergyBreakdown, FieldState};
