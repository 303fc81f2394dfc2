//! Linear perturbations of the soliton: effective potential and the
//! fundamental quasinormal mode.

pub mod potential;
pub mod qnm;

pub use potential::{effective_potential, effective_potential_with, potential_of, PotentialTable};
pub use qnm::{
    find_qnm, integrate_from_origin, integrate_from_origin_amplitude_phase,
    integrate_riccati_backward, matching_residual, predicted_linear_exponent, zero_energy_nodes, OutgoingSeed,
    QnmConfig, QuasinormalMode,
};
