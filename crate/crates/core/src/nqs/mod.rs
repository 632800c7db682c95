//! Nonlinear scissors: Kerr-oscillator Hamiltonians, closed and Lindblad
//! evolution, and the analyses built on them.

pub mod analysis;
pub mod evolve;
pub mod hamiltonian;
pub mod kicked;

pub use analysis::{
    bell_generation_report, linear_coupler_targets, negativity_of, negativity_trace,
    nonlinear_coupler_targets, parametric_targets, qubit_subspace_negativity, sanders_hamiltonian,
    sanders_noon, sanders_unitary, subspace_leakage, w_closed_form, w_overlap, w_peak_time,
    w_state_evolution, BellPeak, BellTarget, DampedCoupler, NegativityMeasure, SandersParams, SandersReport,
    WReport,
};
pub use evolve::{
    closed_rhs, evolve_closed, evolve_master, liouvillian, uniform_times, Backend, ClosedTrace,
    DampingKind, DampingSpec, EvolutionTrace, MasterTrace, HERMITICITY_DRIFT_TOL, NORM_DRIFT_TOL,
    POSITIVITY_TOL, TRACE_DRIFT_TOL,
};
pub use hamiltonian::{
    build_hamiltonian, cross_kerr_hamiltonian, kilin_hamiltonian, kilin_property, Coupling,
    KerrCouplerSpec, KilinCheck, KilinForm, HERMITICITY_TOL, KILIN_DEFICIT_TOL,
};
pub use kicked::{kicked_kerr_evolve, population_outside_levels, KickedKerrSpec};
