use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::fock::{displacement, ModeLayout, StateVector};

/// Coherent amplitude and the highest retained Fock level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherentSpec {
    pub alpha: C64,
    pub cutoff: usize,
}

impl CoherentSpec {
    pub fn new(alpha: C64, cutoff: usize) -> Self {
        Self { alpha, cutoff }
    }
}

/// Infinite-space coherent amplitudes `e^{-|a|^2/2} a^n / sqrt(n!)` for
/// `n = 0..=cutoff`, computed by a stable recurrence.
pub fn coherent_series(alpha: C64, cutoff: usize) -> Vec<C64> {
    let mut out = Vec::with_capacity(cutoff + 1);
    let mut c = C64::new((-0.5 * alpha.norm_sqr()).exp(), 0.0);
    out.push(c);
    for n in 1..=cutoff {
        c = c * alpha / (n as f64).sqrt();
        out.push(c);
    }
    out
}

/// Coherent state on levels `0..=cutoff`.
///
/// With `truncated = false` the tail is clipped and the result keeps norm
/// below one (its squared norm is the retained probability). With
/// `truncated = true` the amplitudes are renormalized (TCS).
pub fn coherent_amplitudes(spec: CoherentSpec, truncated: bool) -> Result<StateVector> {
    if !spec.alpha.re.is_finite() || !spec.alpha.im.is_finite() {
        return Err(Error::NonFinite("coherent amplitude"));
    }
    let amps = coherent_series(spec.alpha, spec.cutoff);
    let state = StateVector::from_vec(ModeLayout::single(spec.cutoff), amps)?;
    if truncated {
        state.normalized()
    } else {
        Ok(state)
    }
}

/// Truncated coherent state: clipped and renormalized.
pub fn tcs(alpha: C64, cutoff: usize) -> Result<StateVector> {
    coherent_amplitudes(CoherentSpec::new(alpha, cutoff), true)
}

/// Finite-dimensional coherent state: truncated displacement acting on vacuum.
pub fn fd_coherent(spec: CoherentSpec) -> Result<StateVector> {
    let d = displacement(spec.cutoff, spec.alpha)?;
    StateVector::vacuum(ModeLayout::single(spec.cutoff)).apply(&d)
}
