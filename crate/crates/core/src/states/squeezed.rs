use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::fock::{squeeze, ModeLayout, StateVector};

/// Retained norm below which [`squeezed_amplitudes`] flags the clipping.
pub const CLIPPED_NORM_WARN: f64 = 0.99;

/// Squeezing `xi = r e^{i theta}`, displacement `alpha`, highest retained level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezeSpec {
    pub xi: C64,
    pub alpha: C64,
    pub cutoff: usize,
}

impl SqueezeSpec {
    pub fn vacuum(xi: C64, cutoff: usize) -> Self {
        Self {
            xi,
            alpha: C64::new(0.0, 0.0),
            cutoff,
        }
    }

    pub fn r(&self) -> f64 {
        self.xi.norm()
    }

    /// Phase of `xi` in `[0, 2 pi)`.
    pub fn theta(&self) -> f64 {
        self.xi.arg().rem_euclid(std::f64::consts::TAU)
    }

    fn check(&self) -> Result<()> {
        let finite = |z: C64| z.re.is_finite() && z.im.is_finite();
        if finite(self.xi) && finite(self.alpha) {
            Ok(())
        } else {
            Err(Error::NonFinite("squeeze parameters"))
        }
    }
}

/// Renormalized squeezed state together with the probability the clipped
/// tail carried away.
#[derive(Debug, Clone, PartialEq)]
pub struct SqueezedState {
    pub state: StateVector,
    /// Squared norm of the infinite-space amplitudes kept on `0..=cutoff`.
    pub retained_norm: f64,
    /// Set when `retained_norm < CLIPPED_NORM_WARN`.
    pub clipped: bool,
}

/// Infinite-space amplitudes of `D(alpha) S(xi) |0>` on `0..=cutoff`.
///
/// Uses the scaled Hermite recurrence `h_{n+1} = w h_n - n e^{i theta} tanh(r) h_{n-1}`
/// so no square root of a complex argument is taken.
pub fn squeezed_series(spec: &SqueezeSpec) -> Vec<C64> {
    let r = spec.r();
    let phase = C64::from_polar(1.0, spec.theta());
    let t = r.tanh();
    let alpha = spec.alpha;
    let w = alpha + alpha.conj() * phase * t;
    let half_s2 = phase * t; // 2 * s^2 with s^2 = e^{i theta} tanh(r) / 2
    let prefactor = (-(alpha.norm_sqr() + alpha.conj() * alpha.conj() * phase * t) * 0.5).exp()
        / r.cosh().sqrt();

    let mut out = Vec::with_capacity(spec.cutoff + 1);
    let mut h_prev = C64::new(0.0, 0.0);
    let mut h = C64::new(1.0, 0.0);
    let mut inv_sqrt_fact = 1.0;
    for n in 0..=spec.cutoff {
        if n > 0 {
            inv_sqrt_fact /= (n as f64).sqrt();
        }
        out.push(prefactor * h * inv_sqrt_fact);
        let next = w * h - half_s2 * (n as f64) * h_prev;
        h_prev = h;
        h = next;
    }
    out
}

/// Squeezed state clipped at the cutoff and renormalized. For `alpha = 0`
/// the odd amplitudes are exactly zero.
pub fn squeezed_amplitudes(spec: SqueezeSpec) -> Result<SqueezedState> {
    spec.check()?;
    let amps = squeezed_series(&spec);
    let state = StateVector::from_vec(ModeLayout::single(spec.cutoff), amps)?;
    let retained_norm = state.norm_sqr();
    let clipped = retained_norm < CLIPPED_NORM_WARN;
    if clipped {
        log::warn!(
            "squeezed state keeps only {retained_norm:.4} of its norm at cutoff {}",
            spec.cutoff
        );
    }
    Ok(SqueezedState {
        state: state.normalized()?,
        retained_norm,
        clipped,
    })
}

fn require_vacuum_spec(spec: &SqueezeSpec) -> Result<()> {
    spec.check()?;
    if spec.alpha != C64::new(0.0, 0.0) {
        return Err(Error::param("alpha", "squeezed vacuum requires alpha = 0"));
    }
    if spec.cutoff < 2 {
        return Err(Error::CutoffTooSmall("squeezed vacuum needs cutoff >= 2".into()));
    }
    Ok(())
}

/// Finite-dimensional squeezed vacuum: the truncated squeeze operator on `|0>`.
pub fn fdsv(spec: SqueezeSpec) -> Result<StateVector> {
    require_vacuum_spec(&spec)?;
    let s = squeeze(spec.cutoff, spec.xi)?;
    StateVector::vacuum(ModeLayout::single(spec.cutoff)).apply(&s)
}

/// Values `G_0(x), .., G_n(x)` of the polynomials with
/// `G_{k+1} = x G_k - 2k(2k-1) G_{k-1}`, `G_0 = 1`, `G_1 = x`.
pub fn meixner_sheffer(n: usize, x: f64) -> Vec<f64> {
    let mut g = Vec::with_capacity(n + 1);
    g.push(1.0);
    if n >= 1 {
        g.push(x);
    }
    for k in 1..n {
        let kf = k as f64;
        g.push(x * g[k] - 2.0 * kf * (2.0 * kf - 1.0) * g[k - 1]);
    }
    g
}

/// Derivative of `G_n` at `x`, by differentiating the recurrence.
pub fn meixner_sheffer_derivative(n: usize, x: f64) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let (mut p0, mut p1) = (1.0, x);
    let (mut d0, mut d1) = (0.0, 1.0);
    for k in 1..n {
        let c = 2.0 * k as f64 * (2.0 * k as f64 - 1.0);
        let p2 = x * p1 - c * p0;
        let d2 = p1 + x * d1 - c * d0;
        p0 = p1;
        p1 = p2;
        d0 = d1;
        d1 = d2;
    }
    d1
}

/// Roots of `G_{n}` as eigenvalues of its symmetric Jacobi matrix, ascending.
pub fn meixner_sheffer_roots(n: usize) -> Result<Vec<f64>> {
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut jacobi = DMatrix::<f64>::zeros(n, n);
    for k in 1..n {
        let off = (2.0 * k as f64 * (2.0 * k as f64 - 1.0)).sqrt();
        jacobi[(k, k - 1)] = off;
        jacobi[(k - 1, k)] = off;
    }
    let mut roots: Vec<f64> = SymmetricEigen::new(jacobi).eigenvalues.iter().copied().collect();
    roots.sort_by(|a, b| a.total_cmp(b));

    let scale = roots.iter().fold(1.0f64, |m, x| m.max(x.abs()));
    for (k, &x) in roots.iter().enumerate() {
        let value = *meixner_sheffer(n, x).last().unwrap();
        let slope = meixner_sheffer_derivative(n, x);
        if !value.is_finite() || !slope.is_finite() || slope == 0.0 {
            return Err(Error::RootFinding(format!(
                "G_{n} root {k} at x = {x}: value {value:e}, derivative {slope:e}"
            )));
        }
        let newton_step = (value / slope).abs();
        if newton_step > 1e-8 * scale {
            return Err(Error::RootFinding(format!(
                "G_{n} root {k} at x = {x} not converged: residual {value:e}, Newton step {newton_step:e}"
            )));
        }
    }
    if roots.windows(2).any(|w| w[1] - w[0] <= 1e-12 * scale) {
        return Err(Error::RootFinding(format!("G_{n} has coincident roots: {roots:?}")));
    }
    Ok(roots)
}

/// Phase convention of the closed-form finite squeezed vacuum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FdsvPhase {
    /// Prefactor `i^n`; agrees with [`fdsv`].
    Operator,
    /// Prefactor `(-i)^n` as commonly printed; equals `S(-xi)|0>`.
    Printed,
}

/// Closed-form finite squeezed vacuum from the roots of `G_{sigma+1}`,
/// `sigma = floor(cutoff / 2)`. Independent of the matrix exponential.
pub fn fdsv_meixner_sheffer(spec: SqueezeSpec, phase: FdsvPhase) -> Result<StateVector> {
    require_vacuum_spec(&spec)?;
    let sigma = spec.cutoff / 2;
    let r = spec.r();
    let theta = spec.theta();
    let roots = meixner_sheffer_roots(sigma + 1)?;

    let mut fact_2sigma = 1.0f64;
    for k in 2..=2 * sigma {
        fact_2sigma *= k as f64;
    }
    let unit = match phase {
        FdsvPhase::Operator => C64::i(),
        FdsvPhase::Printed => -C64::i(),
    };

    let mut amps = vec![C64::new(0.0, 0.0); spec.cutoff + 1];
    let columns: Vec<(Vec<f64>, f64, C64)> = roots
        .iter()
        .map(|&x| {
            let g = meixner_sheffer(sigma, x);
            let g_sigma = g[sigma];
            let weight = 1.0 / (g_sigma * meixner_sheffer_derivative(sigma + 1, x));
            (g, weight, C64::from_polar(1.0, r * x / 2.0))
        })
        .collect();
    if columns.iter().any(|(_, w, _)| !w.is_finite()) {
        return Err(Error::RootFinding(
            "G_sigma vanishes at a root of G_{sigma+1}".into(),
        ));
    }

    let mut fact_2n = 1.0f64;
    for n in 0..=sigma {
        if n > 0 {
            fact_2n *= (2 * n - 1) as f64 * (2 * n) as f64;
        }
        let sum: C64 = columns.iter().map(|(g, w, e)| *e * (g[n] * w)).sum();
        amps[2 * n] = unit.powu(n as u32) * (fact_2sigma / fact_2n.sqrt()) * sum
            * C64::from_polar(1.0, n as f64 * theta);
    }
    StateVector::from_vec(ModeLayout::single(spec.cutoff), amps)
}

/// Truncated squeezed vacuum: infinite-space amplitudes
/// `c_{2n} = sqrt((2n)!)/(2^n n!) (-e^{i theta} tanh r)^n / sqrt(cosh r)`
/// kept for `2n <= cutoff` and renormalized.
pub fn tsv(spec: SqueezeSpec) -> Result<StateVector> {
    require_vacuum_spec(&spec)?;
    let mut amps = vec![C64::new(0.0, 0.0); spec.cutoff + 1];
    let ratio = -C64::from_polar(spec.r().tanh(), spec.theta());
    let mut c = C64::new(1.0, 0.0);
    amps[0] = c;
    for n in 1..=spec.cutoff / 2 {
        // c_{2n}/c_{2n-2} = ratio * sqrt((2n)(2n-1)) / (2n)
        let nf = n as f64;
        c = c * ratio * ((2.0 * nf) * (2.0 * nf - 1.0)).sqrt() / (2.0 * nf);
        amps[2 * n] = c;
    }
    StateVector::from_vec(ModeLayout::single(spec.cutoff), amps)?.normalized()
}
