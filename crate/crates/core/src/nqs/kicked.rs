use num_complex::Complex64 as C64;

use super::evolve::ClosedTrace;
use crate::error::{Error, Result};
use crate::fock::{expm, LinearOperator, ModeLayout, StateVector};

/// Kerr oscillator `(chi/2) n (n - z)` between instantaneous `z`-photon kicks
/// `exp(-i (eps a^dag^z + eps^* a^z))`, repeated every `period`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KickedKerrSpec {
    pub chi: f64,
    pub period: f64,
    pub epsilon: C64,
    pub n_kicks: usize,
    pub z: usize,
    pub cutoff: usize,
}

impl KickedKerrSpec {
    /// One-photon variant with `chi T = 1` and `eps = chi T / 100`.
    pub fn one_photon(n_kicks: usize, cutoff: usize) -> Self {
        Self {
            chi: 1.0,
            period: 1.0,
            epsilon: C64::new(0.01, 0.0),
            n_kicks,
            z: 1,
            cutoff,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.period > 0.0 && self.period.is_finite()) {
            return Err(Error::param("period", "must be finite and > 0"));
        }
        if !self.chi.is_finite() || !self.epsilon.re.is_finite() || !self.epsilon.im.is_finite() {
            return Err(Error::NonFinite("kicked Kerr parameter"));
        }
        if self.n_kicks == 0 {
            return Err(Error::param("n_kicks", "need at least one kick"));
        }
        if self.z == 0 {
            return Err(Error::param("z", "resonance order must be >= 1"));
        }
        if self.cutoff < self.z {
            return Err(Error::CutoffTooSmall(format!(
                "z = {} needs cutoff >= {}, got {}",
                self.z, self.z, self.cutoff
            )));
        }
        Ok(())
    }

    /// One period: a kick followed by free Kerr evolution.
    pub fn floquet(&self) -> Result<LinearOperator> {
        self.validate()?;
        let layout = ModeLayout::single(self.cutoff);
        let phase = self.chi * self.period / 2.0;
        let z = self.z as f64;
        let kerr = LinearOperator::diagonal(layout, |m| {
            let n = m[0] as f64;
            C64::from_polar(1.0, -phase * n * (n - z))
        });
        let raise = LinearOperator::creation(self.cutoff)?.pow(self.z as u32);
        let gen = &raise.scaled(self.epsilon) + &raise.adjoint().scaled(self.epsilon.conj());
        let kick = expm(&gen, 1.0)?;
        Ok(&kerr * &kick)
    }
}

/// Applies the kick-then-Kerr step `n_kicks` times; snapshot `k` is the state
/// after `k` periods (snapshot 0 is `psi0`).
pub fn kicked_kerr_evolve(spec: &KickedKerrSpec, psi0: &StateVector) -> Result<ClosedTrace> {
    let u = spec.floquet()?;
    psi0.check_layout(u.layout())?;
    let mut states = Vec::with_capacity(spec.n_kicks + 1);
    let mut leakage = Vec::with_capacity(spec.n_kicks + 1);
    let mut psi = psi0.clone();
    for k in 0..=spec.n_kicks {
        if k > 0 {
            psi = psi.apply(&u)?;
        }
        leakage.push(vec![psi.top_population(0)?]);
        states.push(psi.clone());
    }
    Ok(ClosedTrace {
        times: (0..=spec.n_kicks).map(|k| k as f64 * spec.period).collect(),
        states,
        leakage,
    })
}

/// Population of levels outside `keep` for every snapshot.
pub fn population_outside_levels(trace: &ClosedTrace, keep: &[usize]) -> Result<Vec<f64>> {
    let occ: Vec<Vec<usize>> = keep.iter().map(|&n| vec![n]).collect();
    trace.map(|s| s.population_outside(&occ))
}
