use num_complex::Complex64 as C64;

use super::evolve::{evolve_closed, evolve_master, Backend, ClosedTrace, DampingSpec, MasterTrace};
use super::hamiltonian::{build_hamiltonian, cross_kerr_hamiltonian, KerrCouplerSpec};
use crate::error::{Error, Result};
use crate::fock::{DensityMatrix, Dopri5, LinearOperator, ModeLayout, StateVector};
use crate::lqs::{bs_unitary, BeamSplitter};
use crate::metrics::{fidelity_pure, negativity, EntanglementTrace};
use crate::states::NamedState;

/// A labelled target state.
#[derive(Debug, Clone, PartialEq)]
pub struct BellTarget {
    pub label: String,
    pub state: StateVector,
}

fn target(label: &str, layout: &ModeLayout, terms: &[(C64, [usize; 2])]) -> Result<BellTarget> {
    let terms: Vec<(C64, Vec<usize>)> = terms.iter().map(|(c, o)| (*c, o.to_vec())).collect();
    Ok(BellTarget {
        label: label.to_string(),
        state: StateVector::superposition(layout.clone(), &terms)?,
    })
}

const ONE: C64 = C64::new(1.0, 0.0);
const I: C64 = C64::new(0.0, 1.0);

/// The four qubit Bell states reached by the singly driven linear coupler.
pub fn linear_coupler_targets(cutoff: usize) -> Result<Vec<BellTarget>> {
    let l = ModeLayout::uniform(2, cutoff)?;
    Ok(vec![
        target("B1", &l, &[(ONE, [1, 1]), (I, [0, 0])])?,
        target("B2", &l, &[(ONE, [0, 0]), (I, [1, 1])])?,
        target("B3", &l, &[(ONE, [0, 1]), (-I, [1, 0])])?,
        target("B4", &l, &[(ONE, [1, 0]), (-I, [0, 1])])?,
    ])
}

/// The three states reached by the nonlinear coupler from `|2,0>`.
pub fn nonlinear_coupler_targets(cutoff: usize) -> Result<Vec<BellTarget>> {
    if cutoff < 2 {
        return Err(Error::CutoffTooSmall("nonlinear coupler targets need cutoff >= 2".into()));
    }
    let l = ModeLayout::uniform(2, cutoff)?;
    Ok(vec![
        target("B1", &l, &[(ONE, [2, 0]), (I, [0, 2])])?,
        target("B2", &l, &[(ONE, [2, 0]), (-I, [0, 2])])?,
        target("B3", &l, &[(ONE, [2, 0]), (I, [1, 2])])?,
    ])
}

/// The two-qutrit generalized Bell states.
pub fn parametric_targets(cutoff: usize) -> Result<Vec<BellTarget>> {
    (1..=3u8)
        .map(|k| {
            Ok(BellTarget {
                label: format!("GB{k}"),
                state: NamedState::GenBell(k).build(cutoff)?,
            })
        })
        .collect()
}

/// Largest fidelity to a target over a time grid.
#[derive(Debug, Clone, PartialEq)]
pub struct BellPeak {
    pub label: String,
    pub fidelity: f64,
    pub time: f64,
}

/// Evolves `psi0` under the coupler and reports, for each target, the
/// maximum fidelity over `times` and where it occurs.
pub fn bell_generation_report(
    spec: &KerrCouplerSpec,
    psi0: &StateVector,
    targets: &[BellTarget],
    times: &[f64],
    backend: Backend,
) -> Result<(ClosedTrace, Vec<BellPeak>)> {
    let h = build_hamiltonian(spec)?;
    let trace = evolve_closed(&h, psi0, times, backend)?;
    let peaks = targets
        .iter()
        .map(|tgt| {
            let mut best = BellPeak {
                label: tgt.label.clone(),
                fidelity: f64::NEG_INFINITY,
                time: f64::NAN,
            };
            for (s, &t) in trace.states.iter().zip(&trace.times) {
                let f = fidelity_pure(&tgt.state, s)?;
                if f > best.fidelity {
                    best.fidelity = f;
                    best.time = t;
                }
            }
            Ok(best)
        })
        .collect::<Result<_>>()?;
    Ok((trace, peaks))
}

/// Population outside the span of `keep` at every snapshot.
pub fn subspace_leakage(trace: &ClosedTrace, keep: &[Vec<usize>]) -> Result<Vec<f64>> {
    trace.map(|s| s.population_outside(keep))
}

/// Amplitudes of `|001>`, `|010>` and `|100>` for the three-mode exchange
/// coupler started in `|001>`.
pub fn w_closed_form(epsilon: f64, t: f64) -> [C64; 3] {
    let p = C64::from_polar(1.0, epsilon * t);
    let m = C64::from_polar(1.0, -2.0 * epsilon * t);
    let side = (m - p) / 3.0;
    [(p * 2.0 + m) / 3.0, side, side]
}

/// `k`-th time (`k >= 1`) at which the three single-excitation amplitudes
/// have equal magnitude.
pub fn w_peak_time(k: usize, epsilon: f64) -> f64 {
    let kf = k as f64;
    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
    std::f64::consts::PI / (3.0 * epsilon) * ((kf - (1.0 + sign) / 2.0) + sign / 3.0)
}

/// Overlap with the W state maximized over local phase rotations
/// `exp(i phi_k n_k)`: `(sum_k |<e_k|psi>|)^2 / 3` with `e_k` the
/// single-excitation basis states.
pub fn w_overlap(state: &StateVector) -> Result<f64> {
    if state.layout().num_modes() != 3 {
        return Err(Error::InvalidLayout("W overlap needs three modes".into()));
    }
    let s: f64 = [[0, 0, 1], [0, 1, 0], [1, 0, 0]]
        .iter()
        .map(|o| state.amplitude(o).map(|c| c.norm()))
        .sum::<Result<f64>>()?;
    Ok(s * s / 3.0)
}

/// Result of [`w_state_evolution`].
#[derive(Debug, Clone, PartialEq)]
pub struct WReport {
    pub trace: ClosedTrace,
    pub overlaps: Vec<f64>,
    /// Largest amplitude distance between the evolved and closed-form states.
    pub closed_form_error: f64,
    /// Largest deviation of the single-excitation population from 1.
    pub excitation_drift: f64,
}

/// Three Kerr modes (`chi = 1`, cutoff 2) with pairwise exchange `epsilon`,
/// started in `|001>`.
pub fn w_state_evolution(epsilon: f64, times: &[f64], backend: Backend) -> Result<WReport> {
    if !(epsilon.is_finite() && epsilon != 0.0) {
        return Err(Error::param("epsilon", "must be finite and nonzero"));
    }
    let spec = KerrCouplerSpec::triple(1.0, C64::new(epsilon, 0.0), 2);
    let h = build_hamiltonian(&spec)?;
    let layout = h.layout().clone();
    let psi0 = StateVector::basis(layout.clone(), &[0, 0, 1])?;
    let trace = evolve_closed(&h, &psi0, times, backend)?;
    let singles = [[0, 0, 1], [0, 1, 0], [1, 0, 0]];

    let mut closed_form_error = 0.0f64;
    let mut excitation_drift = 0.0f64;
    let mut overlaps = Vec::with_capacity(times.len());
    for (s, &t) in trace.states.iter().zip(times) {
        let cf = w_closed_form(epsilon, t);
        let mut expected = StateVector::zeros(layout.clone());
        for (occ, amp) in singles.iter().zip(cf) {
            expected.amplitudes_mut()[layout.index_of(occ)?] = amp;
        }
        closed_form_error = closed_form_error.max((s.amplitudes() - expected.amplitudes()).norm());
        let pop: f64 = singles.iter().map(|o| s.amplitude(o).map(|c| c.norm_sqr())).sum::<Result<f64>>()?;
        excitation_drift = excitation_drift.max((pop - 1.0).abs());
        overlaps.push(w_overlap(s)?);
    }
    Ok(WReport {
        trace,
        overlaps,
        closed_form_error,
        excitation_drift,
    })
}

/// Which entanglement the negativity of a two-mode state is taken over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NegativityMeasure {
    /// Whole two-mode system, partial transpose on mode 1.
    Full,
    /// Projection onto `span{|p,p>, |p,q>, |q,p>, |q,q>}` for levels `[p, q]`,
    /// renormalized and read as two qubits.
    QubitSubspace([usize; 2]),
}

/// Negativity `max(0, -2 lambda_min)` of the projected and renormalized
/// two-qubit block; zero when the block carries no population.
pub fn qubit_subspace_negativity(rho: &DensityMatrix, levels: [usize; 2]) -> Result<f64> {
    if rho.layout().num_modes() != 2 {
        return Err(Error::InvalidLayout("subspace negativity needs two modes".into()));
    }
    let [p, q] = levels;
    if p == q {
        return Err(Error::param("levels", "the two levels must differ"));
    }
    let basis = vec![vec![p, p], vec![p, q], vec![q, p], vec![q, q]];
    let block = rho.project(&basis)?;
    let tr = block.trace().re;
    if tr < 1e-14 {
        return Ok(0.0);
    }
    let sub = DensityMatrix::new(ModeLayout::uniform(2, 1)?, block / C64::new(tr, 0.0))?;
    Ok(negativity(&sub, 1)?.value)
}

pub fn negativity_of(rho: &DensityMatrix, measure: NegativityMeasure) -> Result<f64> {
    match measure {
        NegativityMeasure::Full => Ok(negativity(rho, 1)?.value),
        NegativityMeasure::QubitSubspace(levels) => qubit_subspace_negativity(rho, levels),
    }
}

/// Negativity of every snapshot of a master-equation run.
pub fn negativity_trace(trace: &MasterTrace, measure: NegativityMeasure, threshold: f64) -> Result<EntanglementTrace> {
    let values = trace.map(|rho| negativity_of(rho, measure))?;
    EntanglementTrace::with_threshold(trace.times.clone(), values, threshold)
}

/// A two-mode coupler with amplitude damping of rate `gamma` on both modes
/// and thermal occupations `nbar`.
#[derive(Debug, Clone, PartialEq)]
pub struct DampedCoupler {
    pub coupler: KerrCouplerSpec,
    pub gamma: f64,
    pub nbar: [f64; 2],
}

impl DampedCoupler {
    pub fn damping(&self) -> Result<Vec<DampingSpec>> {
        (0..2)
            .map(|m| DampingSpec::amplitude(m, self.gamma, self.nbar[m]))
            .collect()
    }

    /// Runs the master equation from `psi0` and returns the snapshots with
    /// their negativity trace.
    pub fn negativity(
        &self,
        psi0: &StateVector,
        times: &[f64],
        measure: NegativityMeasure,
        threshold: f64,
    ) -> Result<(MasterTrace, EntanglementTrace)> {
        if self.coupler.coupling.num_modes() != 2 {
            return Err(Error::InvalidLayout("damped coupler needs two modes".into()));
        }
        let h = build_hamiltonian(&self.coupler)?;
        let trace = evolve_master(
            &h,
            &self.damping()?,
            &DensityMatrix::from_pure(psi0),
            times,
            &Dopri5::default(),
        )?;
        let ent = negativity_trace(&trace, measure, threshold)?;
        Ok((trace, ent))
    }
}

/// Parameters of the self/cross-Kerr interferometer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SandersParams {
    pub chi: f64,
    pub omega: [f64; 2],
    /// Duration of the joint (cross-Kerr) stage.
    pub t1: f64,
    /// Duration of the separate self-Kerr stage.
    pub t2: f64,
}

/// Diagonal evolution over both stages:
/// `exp{-i (w_a n_a + w_b n_b)(t1 + t2) - (i chi/2)(n_a^2 + n_b^2)(t1 + t2) - 2 i chi n_a n_b t1}`.
pub fn sanders_unitary(p: &SandersParams, cutoff: usize) -> Result<LinearOperator> {
    if !(p.t1 >= 0.0 && p.t2 >= 0.0) {
        return Err(Error::param("t1/t2", "stage durations must be >= 0"));
    }
    let layout = ModeLayout::uniform(2, cutoff)?;
    let total = p.t1 + p.t2;
    Ok(LinearOperator::diagonal(layout, |m| {
        let (na, nb) = (m[0] as f64, m[1] as f64);
        let phase = (p.omega[0] * na + p.omega[1] * nb) * total
            + 0.5 * p.chi * (na * na + nb * nb) * total
            + 2.0 * p.chi * na * nb * p.t1;
        C64::from_polar(1.0, -phase)
    }))
}

/// Output of the splitter, Kerr stage, splitter sequence on `|n, 0>`.
#[derive(Debug, Clone, PartialEq)]
pub struct SandersReport {
    pub output: StateVector,
    /// Fidelity to `(|n,0> + e^{i phi}|0,n>)/sqrt 2` maximized over `phi`.
    pub noon_fidelity: f64,
    /// `| ||output|| - 1 |`; nonzero only if the cutoff clips the splitters.
    pub norm_deviation: f64,
    /// Largest off-diagonal magnitude of the Kerr stage in the Fock basis.
    pub kerr_off_diagonal: f64,
}

pub fn sanders_noon(n: usize, p: &SandersParams, cutoff: usize) -> Result<SandersReport> {
    if n == 0 || cutoff < n {
        return Err(Error::CutoffTooSmall(format!("need 1 <= n <= cutoff, got n = {n}, cutoff = {cutoff}")));
    }
    let kerr = sanders_unitary(p, cutoff)?;
    let layout = kerr.layout().clone();
    let bs = bs_unitary(&BeamSplitter::symmetric((0, 1)), &layout)?;
    let total = &(&bs * &kerr) * &bs;
    let output = StateVector::basis(layout, &[n, 0])?.apply(&total)?;
    let a = output.amplitude(&[n, 0])?.norm();
    let b = output.amplitude(&[0, n])?.norm();
    let m = kerr.matrix();
    let mut off = 0.0f64;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            if i != j {
                off = off.max(m[(i, j)].norm());
            }
        }
    }
    Ok(SandersReport {
        norm_deviation: (output.norm() - 1.0).abs(),
        output,
        noon_fidelity: (a + b).powi(2) / 2.0,
        kerr_off_diagonal: off,
    })
}

/// The cross-Kerr Hamiltonian with equal constants, for callers that evolve
/// it directly.
pub fn sanders_hamiltonian(p: &SandersParams, cutoff: usize) -> Result<LinearOperator> {
    cross_kerr_hamiltonian(p.omega, [p.chi; 2], p.chi, cutoff)
}
