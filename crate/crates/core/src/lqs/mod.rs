//! Linear-optical scissors: passive networks on truncated multimode spaces,
//! photodetector models and conditional projection.

pub mod detect;
pub mod network;
pub mod optimize;
pub mod schemes;

pub use detect::{
    conditional_project, measure, pattern_completeness, ConditionalOutcome, DetectionPattern,
    DetectorKind, DetectorModel,
};
pub use network::{
    bs_unitary, embed_two_mode, mz_element, mz_unitary, BeamSplitter, Element, Network,
    BS_NORM_TOL, NORM_GUARD_TOL,
};
pub use optimize::{nelder_mead, Minimum};
pub use schemes::{
    coherent_cutoff, dakna_sequence, hole_burned_targets, kkgj, kkgj_exact_transmittance,
    mz_closed_form, mz_truncate, optimize_multiport, ppb, ppb_closed_form, teleport_fidelity_curve,
    villas_boas_truncate, MultiportConfig, MultiportFit, SplitterParams, TeleportConfig,
    ThreeModeScissors,
};
