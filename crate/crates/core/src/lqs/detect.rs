use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::fock::{DensityMatrix, LinearOperator, ModeLayout, StateVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DetectorKind {
    IdealPnr,
    /// Bucket detector: outcome 0 is "no click", 1 is "click".
    OnOff,
    /// Photon-number-resolving with efficiency and dark counts.
    PnrLossy,
}

/// Photodetector described by the diagonal POVM `P(count | n photons)`.
/// Loss acts as a binomial thinning of the incident photons and dark counts
/// add an independent Poisson count.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectorModel {
    pub kind: DetectorKind,
    pub efficiency: f64,
    pub dark_rate: f64,
}

impl Default for DetectorModel {
    fn default() -> Self {
        Self::ideal()
    }
}

impl DetectorModel {
    pub fn ideal() -> Self {
        Self {
            kind: DetectorKind::IdealPnr,
            efficiency: 1.0,
            dark_rate: 0.0,
        }
    }

    pub fn new(kind: DetectorKind, efficiency: f64, dark_rate: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&efficiency) {
            return Err(Error::param("efficiency", format!("{efficiency} not in [0, 1]")));
        }
        if !(dark_rate >= 0.0) || !dark_rate.is_finite() {
            return Err(Error::param("dark_rate", format!("{dark_rate} must be >= 0")));
        }
        if kind == DetectorKind::IdealPnr && (efficiency != 1.0 || dark_rate != 0.0) {
            return Err(Error::param(
                "kind",
                "ideal detectors have unit efficiency and no dark counts",
            ));
        }
        Ok(Self {
            kind,
            efficiency,
            dark_rate,
        })
    }

    pub fn on_off(efficiency: f64, dark_rate: f64) -> Result<Self> {
        Self::new(DetectorKind::OnOff, efficiency, dark_rate)
    }

    pub fn pnr_lossy(efficiency: f64, dark_rate: f64) -> Result<Self> {
        Self::new(DetectorKind::PnrLossy, efficiency, dark_rate)
    }

    /// `P(count | n)`.
    pub fn weight(&self, count: usize, n: usize) -> f64 {
        match self.kind {
            DetectorKind::IdealPnr => (count == n) as u8 as f64,
            DetectorKind::PnrLossy => (0..=count.min(n))
                .map(|k| binomial_pmf(k, n, self.efficiency) * poisson_pmf(count - k, self.dark_rate))
                .sum(),
            DetectorKind::OnOff => {
                let off = (1.0 - self.efficiency).powi(n as i32) * (-self.dark_rate).exp();
                match count {
                    0 => off,
                    1 => 1.0 - off,
                    _ => 0.0,
                }
            }
        }
    }

    /// Outcomes to enumerate for a completeness sum when at most `max_n`
    /// photons arrive. Dark counts make the lossy PNR outcome set unbounded;
    /// it is cut at `max_n + 20`.
    pub fn outcomes(&self, max_n: usize) -> Vec<usize> {
        match self.kind {
            DetectorKind::IdealPnr => (0..=max_n).collect(),
            DetectorKind::OnOff => vec![0, 1],
            DetectorKind::PnrLossy if self.dark_rate == 0.0 => (0..=max_n).collect(),
            DetectorKind::PnrLossy => (0..=max_n + 20).collect(),
        }
    }

    pub fn is_ideal(&self) -> bool {
        self.kind == DetectorKind::IdealPnr
    }
}

fn binomial_pmf(k: usize, n: usize, p: f64) -> f64 {
    let mut c = 1.0;
    for m in 0..k {
        c *= (n - m) as f64 / (m + 1) as f64;
    }
    c * p.powi(k as i32) * (1.0 - p).powi((n - k) as i32)
}

fn poisson_pmf(k: usize, mean: f64) -> f64 {
    let mut v = (-mean).exp();
    for m in 1..=k {
        v *= mean / m as f64;
    }
    if k > 0 && mean == 0.0 {
        0.0
    } else {
        v
    }
}

/// Required counts on measured modes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DetectionPattern {
    counts: BTreeMap<usize, usize>,
}

impl DetectionPattern {
    pub fn new(pairs: &[(usize, usize)]) -> Result<Self> {
        let mut counts = BTreeMap::new();
        for &(mode, count) in pairs {
            if counts.insert(mode, count).is_some() {
                return Err(Error::param("pattern", format!("mode {mode} listed twice")));
            }
        }
        if counts.is_empty() {
            return Err(Error::EmptyInput("detection pattern"));
        }
        Ok(Self { counts })
    }

    /// Measured modes in ascending order.
    pub fn modes(&self) -> Vec<usize> {
        self.counts.keys().copied().collect()
    }

    pub fn counts(&self) -> Vec<usize> {
        self.counts.values().copied().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.counts.iter().map(|(&m, &c)| (m, c))
    }
}

/// Heralded state of the unmeasured modes and the probability of the pattern.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionalOutcome {
    /// Normalized when `probability > 0`.
    pub state: DensityMatrix,
    /// The same state as a vector when every detector is ideal.
    pub pure: Option<StateVector>,
    pub probability: f64,
}

/// Detector per measured mode: either one model for all or one per mode in
/// ascending mode order.
fn detectors_for(pattern: &DetectionPattern, detectors: &[DetectorModel]) -> Result<Vec<DetectorModel>> {
    let n = pattern.counts.len();
    match detectors.len() {
        0 => Ok(vec![DetectorModel::ideal(); n]),
        1 => Ok(vec![detectors[0]; n]),
        k if k == n => Ok(detectors.to_vec()),
        k => Err(Error::DimensionMismatch { expected: n, got: k }),
    }
}

/// Detection on the output of a network whose action has already been applied.
pub fn measure(
    state: &StateVector,
    pattern: &DetectionPattern,
    detectors: &[DetectorModel],
) -> Result<ConditionalOutcome> {
    let layout = state.layout();
    let dets = detectors_for(pattern, detectors)?;
    for (mode, count) in pattern.iter() {
        layout.check_mode(mode)?;
        let cutoff = layout.dims()[mode] - 1;
        if count > cutoff {
            return Err(Error::CutoffTooSmall(format!(
                "pattern asks for {count} counts on mode {mode} with cutoff {cutoff}"
            )));
        }
    }
    let measured = pattern.modes();
    let counts = pattern.counts();
    let kept: Vec<usize> = (0..layout.num_modes())
        .filter(|m| !measured.contains(m))
        .collect();
    if kept.is_empty() {
        return Err(Error::param("pattern", "every mode is measured; nothing is heralded"));
    }
    let kept_layout = layout.sub_layout(&kept)?;
    let dk = kept_layout.total_dim();
    let kept_index = |full: usize| -> usize {
        kept.iter()
            .fold(0, |acc, &m| acc * layout.dims()[m] + layout.level(full, m))
    };

    let weight_of = |full: usize| -> f64 {
        measured
            .iter()
            .zip(&counts)
            .zip(&dets)
            .map(|((&m, &c), d)| d.weight(c, layout.level(full, m)))
            .product()
    };

    if dets.iter().all(DetectorModel::is_ideal) {
        let mut out = vec![C64::new(0.0, 0.0); dk];
        for (full, &a) in state.amplitudes().iter().enumerate() {
            if weight_of(full) == 1.0 {
                out[kept_index(full)] = a;
            }
        }
        let psi = StateVector::from_vec(kept_layout.clone(), out)?;
        let probability = psi.norm_sqr();
        let psi = if probability > 0.0 { psi.normalized()? } else { psi };
        return Ok(ConditionalOutcome {
            state: DensityMatrix::from_pure(&psi),
            pure: Some(psi),
            probability,
        });
    }

    // Group amplitudes by the configuration of the measured modes.
    let mut groups: BTreeMap<usize, (f64, Vec<C64>)> = BTreeMap::new();
    for (full, &a) in state.amplitudes().iter().enumerate() {
        if a == C64::new(0.0, 0.0) {
            continue;
        }
        let w = weight_of(full);
        if w == 0.0 {
            continue;
        }
        let key = measured.iter().fold(0, |acc, &m| acc * layout.dims()[m] + layout.level(full, m));
        let entry = groups.entry(key).or_insert_with(|| (w, vec![C64::new(0.0, 0.0); dk]));
        entry.1[kept_index(full)] = a;
    }
    let mut rho = DMatrix::<C64>::zeros(dk, dk);
    for (w, v) in groups.values() {
        for r in 0..dk {
            if v[r] == C64::new(0.0, 0.0) {
                continue;
            }
            for c in 0..dk {
                rho[(r, c)] += v[r] * v[c].conj() * *w;
            }
        }
    }
    let probability = rho.trace().re;
    if probability > 0.0 {
        rho /= C64::new(probability, 0.0);
    }
    Ok(ConditionalOutcome {
        state: DensityMatrix::new(kept_layout, rho)?,
        pure: None,
        probability,
    })
}

/// Applies `network` to `input`, then the detection POVM for `pattern`.
pub fn conditional_project(
    input: &StateVector,
    network: &LinearOperator,
    pattern: &DetectionPattern,
    detectors: &[DetectorModel],
) -> Result<ConditionalOutcome> {
    let out = input.apply(network)?;
    let lost = input.norm_sqr() - out.norm_sqr();
    if lost.abs() > super::network::NORM_GUARD_TOL * input.norm_sqr().max(1.0) {
        return Err(Error::CutoffTooSmall(format!(
            "network changed the norm by {lost:.3e}; raise the cutoffs"
        )));
    }
    measure(&out, pattern, detectors)
}

/// Sum of outcome probabilities over every pattern on `modes`.
pub fn pattern_completeness(
    state: &StateVector,
    modes: &[usize],
    detectors: &[DetectorModel],
) -> Result<f64> {
    if modes.is_empty() {
        return Err(Error::EmptyInput("measured modes"));
    }
    let dets = match detectors.len() {
        0 => vec![DetectorModel::ideal(); modes.len()],
        1 => vec![detectors[0]; modes.len()],
        k if k == modes.len() => detectors.to_vec(),
        k => {
            return Err(Error::DimensionMismatch {
                expected: modes.len(),
                got: k,
            })
        }
    };
    let layout: &ModeLayout = state.layout();
    let outcome_sets: Vec<Vec<usize>> = modes
        .iter()
        .zip(&dets)
        .map(|(&m, d)| {
            layout.check_mode(m)?;
            Ok(d.outcomes(layout.dims()[m] - 1))
        })
        .collect::<Result<_>>()?;
    // Sum over outcomes without the per-pattern cutoff check of `measure`.
    let mut total = 0.0;
    for (full, a) in state.amplitudes().iter().enumerate() {
        let p = a.norm_sqr();
        if p == 0.0 {
            continue;
        }
        let mut mass = 1.0;
        for ((&m, d), outs) in modes.iter().zip(&dets).zip(&outcome_sets) {
            let n = layout.level(full, m);
            mass *= outs.iter().map(|&c| d.weight(c, n)).sum::<f64>();
        }
        total += p * mass;
    }
    Ok(total)
}
