use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::fock::{CsrMatrix, DensityMatrix, Dopri5, LinearOperator, ModeLayout, Spectral, StateVector};

pub const NORM_DRIFT_TOL: f64 = 1e-6;
pub const TRACE_DRIFT_TOL: f64 = 1e-8;
pub const HERMITICITY_DRIFT_TOL: f64 = 1e-10;
pub const POSITIVITY_TOL: f64 = -1e-6;

/// Snapshots of an evolution with the top-level population of every mode.
#[derive(Debug, Clone, PartialEq)]
pub struct EvolutionTrace<S> {
    pub times: Vec<f64>,
    pub states: Vec<S>,
    /// `leakage[k][mode]` is the population of the highest retained level of
    /// `mode` at `times[k]`.
    pub leakage: Vec<Vec<f64>>,
}

pub type ClosedTrace = EvolutionTrace<StateVector>;
pub type MasterTrace = EvolutionTrace<DensityMatrix>;

impl<S> EvolutionTrace<S> {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn last(&self) -> Option<&S> {
        self.states.last()
    }

    pub fn max_leakage(&self) -> f64 {
        self.leakage.iter().flatten().copied().fold(0.0, f64::max)
    }

    /// Applies `f` to every snapshot.
    pub fn map<T>(&self, f: impl FnMut(&S) -> Result<T>) -> Result<Vec<T>> {
        self.states.iter().map(f).collect()
    }
}

/// Propagation method for closed systems.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Backend {
    /// Eigendecomposition of `H`.
    Expm,
    /// Adaptive integration of the amplitude equations.
    Ode(Dopri5),
}

impl Backend {
    pub fn ode() -> Self {
        Backend::Ode(Dopri5::default())
    }
}

fn check_times(times: &[f64]) -> Result<()> {
    if times.is_empty() {
        return Err(Error::EmptyInput("times"));
    }
    if times.iter().any(|t| !(t.is_finite() && *t >= 0.0)) {
        return Err(Error::param("times", "must be finite and >= 0"));
    }
    if times.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::param("times", "must be non-decreasing"));
    }
    Ok(())
}

fn check_hamiltonian(h: &LinearOperator) -> Result<()> {
    let scale = h.matrix().iter().map(|z| z.norm()).fold(1.0, f64::max);
    let dev = h.hermiticity_deviation();
    if dev > 1e-12 * scale {
        return Err(Error::NotHermitian(dev));
    }
    Ok(())
}

/// Integrates from `t = 0` and returns the solution at each of `times`.
fn integrate_from_zero<F>(ode: &Dopri5, f: F, y0: &[C64], times: &[f64]) -> Result<Vec<Vec<C64>>>
where
    F: FnMut(f64, &[C64], &mut [C64]),
{
    if times[0] == 0.0 {
        return ode.integrate(f, y0, times);
    }
    let mut grid = Vec::with_capacity(times.len() + 1);
    grid.push(0.0);
    grid.extend_from_slice(times);
    let mut out = ode.integrate(f, y0, &grid)?;
    out.remove(0);
    Ok(out)
}

/// `dy = -i H y`.
pub fn closed_rhs(h: &CsrMatrix, y: &[C64], dy: &mut [C64]) {
    h.matvec(y, dy);
    for v in dy.iter_mut() {
        *v = C64::new(v.im, -v.re);
    }
}

fn leakage_row(layout: &ModeLayout, top: impl Fn(usize) -> Result<f64>) -> Result<Vec<f64>> {
    (0..layout.num_modes()).map(top).collect()
}

/// `|psi(t)> = exp(-i H t)|psi0>` at each of `times` (all `>= 0`).
pub fn evolve_closed(h: &LinearOperator, psi0: &StateVector, times: &[f64], backend: Backend) -> Result<ClosedTrace> {
    check_hamiltonian(h)?;
    psi0.check_layout(h.layout())?;
    check_times(times)?;
    let layout = h.layout().clone();
    let n0 = psi0.norm();

    let raw: Vec<DVector<C64>> = match backend {
        Backend::Expm => {
            let spec = Spectral::new(h.matrix());
            times.iter().map(|&t| spec.evolve(psi0.amplitudes(), t)).collect()
        }
        Backend::Ode(ode) => {
            let sparse = CsrMatrix::from_dense(h.matrix(), 0.0);
            integrate_from_zero(
                &ode,
                |_, y, dy| closed_rhs(&sparse, y, dy),
                psi0.amplitudes().as_slice(),
                times,
            )?
            .into_iter()
            .map(DVector::from_vec)
            .collect()
        }
    };

    let mut states = Vec::with_capacity(times.len());
    let mut leakage = Vec::with_capacity(times.len());
    for (amps, &t) in raw.into_iter().zip(times) {
        let s = StateVector::new(layout.clone(), amps)?;
        let drift = (s.norm() - n0).abs();
        if drift > NORM_DRIFT_TOL {
            return Err(Error::NormDrift { drift, time: t });
        }
        leakage.push(leakage_row(&layout, |m| s.top_population(m))?);
        states.push(s);
    }
    Ok(EvolutionTrace {
        times: times.to_vec(),
        states,
        leakage,
    })
}

/// Environment coupling of a single mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DampingKind {
    /// Photon loss to (and gain from) a thermal bath.
    Amplitude,
    /// Number-conserving dephasing.
    Phase,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DampingSpec {
    pub mode: usize,
    pub gamma: f64,
    pub nbar: f64,
    pub kind: DampingKind,
}

impl DampingSpec {
    pub fn new(mode: usize, gamma: f64, nbar: f64, kind: DampingKind) -> Result<Self> {
        if !(gamma >= 0.0 && gamma.is_finite()) {
            return Err(Error::param("gamma", format!("{gamma} must be finite and >= 0")));
        }
        if !(nbar >= 0.0 && nbar.is_finite()) {
            return Err(Error::param("nbar", format!("{nbar} must be finite and >= 0")));
        }
        Ok(Self { mode, gamma, nbar, kind })
    }

    pub fn amplitude(mode: usize, gamma: f64, nbar: f64) -> Result<Self> {
        Self::new(mode, gamma, nbar, DampingKind::Amplitude)
    }

    pub fn phase(mode: usize, gamma: f64, nbar: f64) -> Result<Self> {
        Self::new(mode, gamma, nbar, DampingKind::Phase)
    }

    /// Lindblad operators `C` with dissipator `C rho C^dag - {C^dag C, rho}/2`.
    ///
    /// Amplitude: `sqrt(gamma (nbar + 1)) a` and `sqrt(gamma nbar) a^dag`.
    /// Phase: `sqrt(gamma (2 nbar + 1)) n`.
    pub fn collapse_operators(&self, layout: &ModeLayout) -> Result<Vec<LinearOperator>> {
        layout.check_mode(self.mode)?;
        let r = |x: f64| C64::new(x.sqrt(), 0.0);
        let mut out = Vec::new();
        match self.kind {
            DampingKind::Amplitude => {
                let a = LinearOperator::mode_annihilation(layout, self.mode)?;
                if self.gamma > 0.0 {
                    out.push(a.scaled(r(self.gamma * (self.nbar + 1.0))));
                }
                if self.gamma * self.nbar > 0.0 {
                    out.push(a.adjoint().scaled(r(self.gamma * self.nbar)));
                }
            }
            DampingKind::Phase => {
                if self.gamma > 0.0 {
                    let n = LinearOperator::mode_number(layout, self.mode)?;
                    out.push(n.scaled(r(self.gamma * (2.0 * self.nbar + 1.0))));
                }
            }
        }
        Ok(out)
    }
}

/// Sparse superoperator acting on row-major `vec(rho)`:
/// `-i (H x I - I x H^T) + sum_C [C x C^* - (C^dag C x I)/2 - (I x (C^dag C)^T)/2]`.
pub fn liouvillian(h: &LinearOperator, collapse: &[LinearOperator]) -> Result<CsrMatrix> {
    let d = h.dim();
    for c in collapse {
        c.check_layout(h)?;
    }
    let id = CsrMatrix::identity(d);
    let sparse = |m: &DMatrix<C64>| CsrMatrix::from_dense(m, 0.0);
    let mut triplets: Vec<(usize, usize, C64)> = Vec::new();
    let mut add = |m: CsrMatrix, scale: C64| {
        triplets.extend(m.triplets().map(|(i, j, v)| (i, j, v * scale)));
    };
    let mi = C64::new(0.0, -1.0);
    add(sparse(h.matrix()).kron(&id), mi);
    add(id.kron(&sparse(&h.matrix().transpose())), -mi);
    let half = C64::new(-0.5, 0.0);
    for c in collapse {
        let cm = c.matrix();
        let cdc = cm.adjoint() * cm;
        add(sparse(cm).kron(&sparse(&cm.map(|z| z.conj()))), C64::new(1.0, 0.0));
        add(sparse(&cdc).kron(&id), half);
        add(id.kron(&sparse(&cdc.transpose())), half);
    }
    Ok(CsrMatrix::from_triplets(d * d, d * d, triplets, 0.0))
}

/// Lindblad evolution of `rho0` from `t = 0`, sampled at `times`.
///
/// Every snapshot is checked for trace drift, Hermiticity drift and negative
/// eigenvalues below [`POSITIVITY_TOL`].
pub fn evolve_master(
    h: &LinearOperator,
    damping: &[DampingSpec],
    rho0: &DensityMatrix,
    times: &[f64],
    ode: &Dopri5,
) -> Result<MasterTrace> {
    check_hamiltonian(h)?;
    rho0.check_layout(h.layout())?;
    check_times(times)?;
    let layout = h.layout().clone();
    let d = layout.total_dim();

    let mut collapse = Vec::new();
    for spec in damping {
        collapse.extend(spec.collapse_operators(&layout)?);
    }
    let l = liouvillian(h, &collapse)?;

    // Row-major vec(rho): element (i, j) at i * d + j.
    let y0: Vec<C64> = (0..d * d).map(|k| rho0.matrix()[(k / d, k % d)]).collect();
    let tr0 = rho0.trace().re;
    let raw = integrate_from_zero(ode, |_, y, dy| l.matvec(y, dy), &y0, times)?;

    let mut states = Vec::with_capacity(times.len());
    let mut leakage = Vec::with_capacity(times.len());
    for (y, &t) in raw.into_iter().zip(times) {
        let m = DMatrix::from_row_slice(d, d, &y);
        let rho = DensityMatrix::new(layout.clone(), m)?;
        let trace = rho.trace();
        let drift = (trace.re - tr0).abs().max(trace.im.abs());
        if drift > TRACE_DRIFT_TOL {
            return Err(Error::TraceDrift { drift, time: t });
        }
        let herm = rho.hermiticity_deviation();
        if herm > HERMITICITY_DRIFT_TOL {
            return Err(Error::NotHermitian(herm));
        }
        let min_eigenvalue = rho.min_eigenvalue();
        if min_eigenvalue < POSITIVITY_TOL {
            return Err(Error::Positivity {
                min_eigenvalue,
                time: t,
                trace: trace.re,
            });
        }
        leakage.push(leakage_row(&layout, |k| rho.top_population(k))?);
        states.push(rho);
    }
    Ok(EvolutionTrace {
        times: times.to_vec(),
        states,
        leakage,
    })
}

/// `n` evenly spaced samples on `[0, t_max]`.
pub fn uniform_times(t_max: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![0.0],
        _ => (0..n).map(|k| t_max * k as f64 / (n - 1) as f64).collect(),
    }
}
