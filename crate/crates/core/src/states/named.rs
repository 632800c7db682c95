use std::f64::consts::{PI, TAU};

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::fock::{ModeLayout, StateVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BellKind {
    PsiMinus,
    PsiPlus,
    PhiMinus,
    PhiPlus,
}

/// Named multimode entangled states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NamedState {
    Bell(BellKind),
    /// `(|N,0> + e^{iN theta}|0,N>)/sqrt(2)`.
    Noon { n: usize, theta: f64 },
    /// Two-qutrit maximally entangled state `B1..B3` (index 1..=3).
    GenBell(u8),
    /// Generalized Bell state of dimension `d` with phase index `m` and shift `n`.
    GenBellD { d: usize, m: usize, n: usize },
    Ghz(usize),
    W(usize),
}

impl NamedState {
    pub fn num_modes(&self) -> usize {
        match *self {
            NamedState::Ghz(n) | NamedState::W(n) => n,
            _ => 2,
        }
    }

    /// Smallest per-mode cutoff that holds the state.
    pub fn min_cutoff(&self) -> usize {
        match *self {
            NamedState::Bell(_) | NamedState::Ghz(_) | NamedState::W(_) => 1,
            NamedState::Noon { n, .. } => n,
            NamedState::GenBell(_) => 2,
            NamedState::GenBellD { d, .. } => d.saturating_sub(1),
        }
    }

    /// Builds the state with every mode truncated at `cutoff`.
    pub fn build(&self, cutoff: usize) -> Result<StateVector> {
        if cutoff < self.min_cutoff() {
            return Err(Error::CutoffTooSmall(format!(
                "{self:?} needs cutoff >= {}, got {cutoff}",
                self.min_cutoff()
            )));
        }
        let one = C64::new(1.0, 0.0);
        let terms: Vec<(C64, Vec<usize>)> = match *self {
            NamedState::Bell(kind) => {
                let (sign, a, b) = match kind {
                    BellKind::PsiMinus => (-1.0, [0, 1], [1, 0]),
                    BellKind::PsiPlus => (1.0, [0, 1], [1, 0]),
                    BellKind::PhiMinus => (-1.0, [0, 0], [1, 1]),
                    BellKind::PhiPlus => (1.0, [0, 0], [1, 1]),
                };
                vec![(one, a.to_vec()), (C64::new(sign, 0.0), b.to_vec())]
            }
            NamedState::Noon { n, theta } => {
                if n == 0 {
                    return Err(Error::param("n", "NOON state needs N >= 1"));
                }
                vec![
                    (one, vec![n, 0]),
                    (C64::from_polar(1.0, n as f64 * theta), vec![0, n]),
                ]
            }
            NamedState::GenBell(idx) => {
                if !(1..=3).contains(&idx) {
                    return Err(Error::param("gen_bell", "index must be 1, 2 or 3"));
                }
                return NamedState::GenBellD {
                    d: 3,
                    m: (idx - 1) as usize,
                    n: 0,
                }
                .build(cutoff);
            }
            NamedState::GenBellD { d, m, n } => {
                if d < 2 {
                    return Err(Error::param("d", "generalized Bell dimension must be >= 2"));
                }
                (0..d)
                    .map(|k| {
                        let phase = C64::from_polar(1.0, TAU * (k * m) as f64 / d as f64);
                        (phase, vec![k, (k + d - n % d) % d])
                    })
                    .collect()
            }
            NamedState::Ghz(n) => {
                if n < 2 {
                    return Err(Error::param("n", "GHZ state needs at least 2 modes"));
                }
                vec![(one, vec![0; n]), (one, vec![1; n])]
            }
            NamedState::W(n) => {
                if n < 2 {
                    return Err(Error::param("n", "W state needs at least 2 modes"));
                }
                (0..n)
                    .map(|k| {
                        let mut occ = vec![0; n];
                        occ[k] = 1;
                        (one, occ)
                    })
                    .collect()
            }
        };
        let layout = ModeLayout::uniform(self.num_modes(), cutoff)?;
        StateVector::superposition(layout, &terms)
    }
}

/// Convenience wrapper for [`NamedState::build`].
pub fn named_entangled(kind: NamedState, cutoff: usize) -> Result<StateVector> {
    kind.build(cutoff)
}

/// Phase `e^{2 pi i / 3}` appearing in the qutrit Bell states.
pub fn qutrit_phase() -> C64 {
    C64::from_polar(1.0, 2.0 * PI / 3.0)
}
