//! Radial numerics shared by every solver: uniform grids with origin parity,
//! fourth-order stencils, quadrature, interpolation and RK4 stepping.

pub mod grid;
pub mod interp;
pub mod quadrature;
pub mod rk4;
pub mod stencil;

pub use grid::{OriginPlacement, Parity, RadialGrid, ScalarField, TimeSeries};
pub use interp::{interpolate, interpolate_values};
pub use quadrature::{adaptive, definite_integral, Quadrature};
pub use rk4::{time_step, Rk4, StateVector};
pub use stencil::{spatial_derivative, DerivativeOrder};
