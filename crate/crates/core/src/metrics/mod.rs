//! Phase-space, photon-statistics and entanglement diagnostics.

pub mod entanglement;
pub mod phase_space;
pub mod stats;

pub use entanglement::{
    bell_correlation, death_revival_intervals, entanglement_entropy, fidelity, fidelity_pure,
    negativity, von_neumann_entropy, EntanglementTrace, NegativityReport, DEFAULT_ZERO_THRESHOLD,
};
pub use phase_space::{husimi_q, HusimiField, PhaseGrid};
pub use stats::{
    field_variance, mean_field, mean_photon_number, mode_distribution, photon_distribution,
    quadrature_stats, QuadratureStats, SQUEEZING_TOL,
};
