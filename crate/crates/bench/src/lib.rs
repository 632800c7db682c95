//! Shared inputs for the criterion benchmarks under `benches/`.

use qscissors::lqs::{DetectorModel, SplitterParams, ThreeModeScissors};
use qscissors::nqs::{build_hamiltonian, DampingSpec, KerrCouplerSpec};
use qscissors::{LinearOperator, StateVector, C64};

/// Nonlinear coupler Hamiltonian at `cutoff` levels per mode.
pub fn coupler_hamiltonian(cutoff: usize) -> LinearOperator {
    let spec = KerrCouplerSpec::nonlinear(1.0, C64::new(0.025, 0.0), C64::new(0.05, 0.0), cutoff);
    build_hamiltonian(&spec).expect("valid coupler")
}

/// Amplitude damping on both modes with a thermal bath on mode 0.
pub fn coupler_damping() -> Vec<DampingSpec> {
    vec![
        DampingSpec::amplitude(0, 0.002, 0.2).expect("valid rate"),
        DampingSpec::amplitude(1, 0.002, 0.0).expect("valid rate"),
    ]
}

/// Three-mode scissors with symmetric splitters and its pre-detection state.
pub fn scissors(cutoff: usize) -> (ThreeModeScissors, StateVector) {
    let cfg = ThreeModeScissors {
        ancilla: [1, 0],
        pattern: [1, 0],
        alpha: C64::new(0.2, 0.0),
        bs1: SplitterParams::symmetric(),
        bs2: SplitterParams::symmetric(),
        detector: DetectorModel::ideal(),
        cutoff,
    };
    let input = cfg.input().expect("valid input");
    (cfg, input)
}
