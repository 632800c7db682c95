//! Constructors for Fock, coherent, squeezed and named entangled states.

pub mod coherent;
pub mod named;
pub mod squeezed;

pub use coherent::{coherent_amplitudes, coherent_series, fd_coherent, tcs, CoherentSpec};
pub use named::{named_entangled, qutrit_phase, BellKind, NamedState};
pub use squeezed::{
    fdsv, fdsv_meixner_sheffer, meixner_sheffer, meixner_sheffer_derivative,
    meixner_sheffer_roots, squeezed_amplitudes, squeezed_series, tsv, FdsvPhase, SqueezeSpec,
    SqueezedState, CLIPPED_NORM_WARN,
};

use crate::error::Result;
use crate::fock::{ModeLayout, StateVector};

/// Single-mode Fock state `|n>` with levels `0..=cutoff`.
pub fn fock(n: usize, cutoff: usize) -> Result<StateVector> {
    StateVector::basis(ModeLayout::single(cutoff), &[n])
}
