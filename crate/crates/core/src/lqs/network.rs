use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::fock::{LinearOperator, ModeLayout, StateVector};

/// Allowed deviation of `|t|^2 + |r|^2` from one.
pub const BS_NORM_TOL: f64 = 1e-12;
/// Allowed norm change when a passive element acts on a truncated state.
pub const NORM_GUARD_TOL: f64 = 1e-10;

/// Lossless beam splitter on the ordered mode pair `(i, j)`, acting as
/// `a_i^dagger -> t a_i^dagger - r* a_j^dagger` and
/// `a_j^dagger -> r a_i^dagger + t* a_j^dagger`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeamSplitter {
    t: C64,
    r: C64,
    modes: (usize, usize),
}

impl BeamSplitter {
    pub fn new(t: C64, r: C64, modes: (usize, usize)) -> Result<Self> {
        let norm = t.norm_sqr() + r.norm_sqr();
        if !norm.is_finite() || (norm - 1.0).abs() > BS_NORM_TOL {
            return Err(Error::param(
                "beam splitter",
                format!("|t|^2 + |r|^2 = {norm}, expected 1"),
            ));
        }
        if modes.0 == modes.1 {
            return Err(Error::param("modes", "beam splitter needs two distinct modes"));
        }
        Ok(Self { t, r, modes })
    }

    /// Real `t = sqrt(T)` and `r = sqrt(1 - T) e^{i phi}`.
    pub fn from_transmittance(transmittance: f64, phi: f64, modes: (usize, usize)) -> Result<Self> {
        if !(0.0..=1.0).contains(&transmittance) {
            return Err(Error::param("transmittance", format!("{transmittance} not in [0, 1]")));
        }
        Self::new(
            C64::new(transmittance.sqrt(), 0.0),
            C64::from_polar((1.0 - transmittance).sqrt(), phi),
            modes,
        )
    }

    pub fn symmetric(modes: (usize, usize)) -> Self {
        Self::from_transmittance(0.5, 0.0, modes).expect("valid symmetric splitter")
    }

    pub fn t(&self) -> C64 {
        self.t
    }

    pub fn r(&self) -> C64 {
        self.r
    }

    pub fn modes(&self) -> (usize, usize) {
        self.modes
    }

    /// Two-mode matrix on dims `(di, dj)`, basis `p * dj + q`. Output levels
    /// beyond the cutoffs are dropped, so the matrix is unitary only on
    /// total-photon sectors that fit both modes.
    pub fn two_mode_matrix(&self, di: usize, dj: usize) -> DMatrix<C64> {
        let (t, r) = (self.t, self.r);
        let mut u = DMatrix::zeros(di * dj, di * dj);
        let ln_fact: Vec<f64> = (0..di + dj)
            .scan(0.0, |acc, k| {
                if k > 0 {
                    *acc += (k as f64).ln();
                }
                Some(*acc)
            })
            .collect();
        for ni in 0..di {
            for nj in 0..dj {
                // (t a^ - r* b^)^ni (r a^ + t* b^)^nj expanded binomially.
                let total = ni + nj;
                let mut poly = vec![C64::new(0.0, 0.0); total + 1]; // index = power of a^
                for k in 0..=ni {
                    let ck = binom(ni, k) * t.powu(k as u32) * (-r.conj()).powu((ni - k) as u32);
                    for l in 0..=nj {
                        let cl = binom(nj, l) * r.powu(l as u32) * t.conj().powu((nj - l) as u32);
                        poly[k + l] += ck * cl;
                    }
                }
                let norm_in = (-0.5 * (ln_fact[ni] + ln_fact[nj])).exp();
                for (p, c) in poly.into_iter().enumerate() {
                    let q = total - p;
                    if p < di && q < dj && c != C64::new(0.0, 0.0) {
                        let norm_out = (0.5 * (ln_fact[p] + ln_fact[q])).exp();
                        u[(p * dj + q, ni * dj + nj)] = c * norm_in * norm_out;
                    }
                }
            }
        }
        u
    }
}

fn binom(n: usize, k: usize) -> f64 {
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, m| acc * (n - m) as f64 / (m + 1) as f64)
}

/// Embeds a two-mode matrix (basis `p * dj + q`) on modes `(i, j)` of `layout`.
pub fn embed_two_mode(u2: &DMatrix<C64>, (i, j): (usize, usize), layout: &ModeLayout) -> Result<LinearOperator> {
    layout.check_mode(i)?;
    layout.check_mode(j)?;
    let dims = layout.dims();
    let (di, dj) = (dims[i], dims[j]);
    if u2.nrows() != di * dj || u2.ncols() != di * dj {
        return Err(Error::DimensionMismatch {
            expected: di * dj,
            got: u2.nrows(),
        });
    }
    let strides = layout.strides();
    let d = layout.total_dim();
    let mut m = DMatrix::zeros(d, d);
    for col in 0..d {
        let ni = layout.level(col, i);
        let nj = layout.level(col, j);
        let base = col - ni * strides[i] - nj * strides[j];
        let sub = ni * dj + nj;
        for p in 0..di {
            for q in 0..dj {
                let v = u2[(p * dj + q, sub)];
                if v != C64::new(0.0, 0.0) {
                    m[(base + p * strides[i] + q * strides[j], col)] = v;
                }
            }
        }
    }
    LinearOperator::new(layout.clone(), m)
}

/// Full-space matrix of a beam splitter.
pub fn bs_unitary(bs: &BeamSplitter, layout: &ModeLayout) -> Result<LinearOperator> {
    let (i, j) = bs.modes;
    layout.check_mode(i)?;
    layout.check_mode(j)?;
    let u2 = bs.two_mode_matrix(layout.dims()[i], layout.dims()[j]);
    embed_two_mode(&u2, bs.modes, layout)
}

/// Applies a two-mode matrix to `state` without forming the full operator.
fn apply_two_mode(u2: &DMatrix<C64>, (i, j): (usize, usize), state: &StateVector) -> Result<StateVector> {
    let layout = state.layout();
    layout.check_mode(i)?;
    layout.check_mode(j)?;
    let dims = layout.dims();
    let (di, dj) = (dims[i], dims[j]);
    let strides = layout.strides();
    let input = state.amplitudes();
    let mut out = vec![C64::new(0.0, 0.0); input.len()];
    for (col, &a) in input.iter().enumerate() {
        if a == C64::new(0.0, 0.0) {
            continue;
        }
        let ni = layout.level(col, i);
        let nj = layout.level(col, j);
        let base = col - ni * strides[i] - nj * strides[j];
        let sub = ni * dj + nj;
        let total = ni + nj;
        // Passive elements only connect states with the same pair total.
        for p in total.saturating_sub(dj - 1)..=total.min(di - 1) {
            let q = total - p;
            let v = u2[(p * dj + q, sub)];
            out[base + p * strides[i] + q * strides[j]] += v * a;
        }
    }
    StateVector::from_vec(layout.clone(), out)
}

/// Passive optical element.
#[derive(Debug, Clone, PartialEq)]
pub enum Element {
    BeamSplitter(BeamSplitter),
    /// `exp(i phi n)` on one mode.
    PhaseShift { mode: usize, phi: f64 },
    /// Photon-number-conserving two-mode matrix, basis `p * dj + q`.
    TwoMode { modes: (usize, usize), matrix: DMatrix<C64> },
}

/// Ordered sequence of passive elements on a fixed layout.
#[derive(Debug, Clone, PartialEq)]
pub struct Network {
    layout: ModeLayout,
    elements: Vec<Element>,
}

impl Network {
    pub fn new(layout: ModeLayout) -> Self {
        Self {
            layout,
            elements: Vec::new(),
        }
    }

    pub fn with(mut self, element: Element) -> Result<Self> {
        self.push(element)?;
        Ok(self)
    }

    pub fn push(&mut self, element: Element) -> Result<()> {
        match &element {
            Element::BeamSplitter(bs) => {
                self.layout.check_mode(bs.modes.0)?;
                self.layout.check_mode(bs.modes.1)?;
            }
            Element::PhaseShift { mode, .. } => self.layout.check_mode(*mode)?,
            Element::TwoMode { modes, matrix } => {
                self.layout.check_mode(modes.0)?;
                self.layout.check_mode(modes.1)?;
                let d = self.layout.dims()[modes.0] * self.layout.dims()[modes.1];
                if matrix.nrows() != d || matrix.ncols() != d {
                    return Err(Error::DimensionMismatch {
                        expected: d,
                        got: matrix.nrows(),
                    });
                }
            }
        }
        self.elements.push(element);
        Ok(())
    }

    pub fn layout(&self) -> &ModeLayout {
        &self.layout
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    /// Applies every element in order. Fails when an element pushes
    /// amplitude past a cutoff.
    pub fn apply(&self, state: &StateVector) -> Result<StateVector> {
        state.check_layout(&self.layout)?;
        let mut psi = state.clone();
        for (k, el) in self.elements.iter().enumerate() {
            let before = psi.norm_sqr();
            psi = match el {
                Element::BeamSplitter(bs) => {
                    let (i, j) = bs.modes;
                    let u2 = bs.two_mode_matrix(self.layout.dims()[i], self.layout.dims()[j]);
                    apply_two_mode(&u2, bs.modes, &psi)?
                }
                Element::TwoMode { modes, matrix } => apply_two_mode(matrix, *modes, &psi)?,
                Element::PhaseShift { mode, phi } => {
                    let mut out = psi.clone();
                    let layout = psi.layout().clone();
                    for (idx, a) in out.amplitudes_mut().iter_mut().enumerate() {
                        *a *= C64::from_polar(1.0, phi * layout.level(idx, *mode) as f64);
                    }
                    out
                }
            };
            let after = psi.norm_sqr();
            if (after - before).abs() > NORM_GUARD_TOL * before.max(1.0) {
                return Err(Error::CutoffTooSmall(format!(
                    "element {k} changed the norm from {before:.12} to {after:.12}; raise the cutoffs"
                )));
            }
        }
        Ok(psi)
    }

    /// Full matrix of the network (last element leftmost).
    pub fn operator(&self) -> Result<LinearOperator> {
        let mut total = LinearOperator::identity(self.layout.clone());
        for el in &self.elements {
            let m = match el {
                Element::BeamSplitter(bs) => bs_unitary(bs, &self.layout)?,
                Element::TwoMode { modes, matrix } => embed_two_mode(matrix, *modes, &self.layout)?,
                Element::PhaseShift { mode, phi } => {
                    let mode = *mode;
                    let phi = *phi;
                    LinearOperator::diagonal(self.layout.clone(), move |m| {
                        C64::from_polar(1.0, phi * m[mode] as f64)
                    })
                }
            };
            total = m.compose(&total)?;
        }
        Ok(total)
    }
}

/// Mach-Zehnder interferometer with internal phase `theta` on modes `(i, j)`:
/// `exp[(theta/2)(a_j^dagger a_i - a_i^dagger a_j)]`, which sends
/// `a_i^dagger -> cos(theta/2) a_i^dagger + sin(theta/2) a_j^dagger`.
pub fn mz_element(theta: f64, modes: (usize, usize)) -> Result<BeamSplitter> {
    let half = theta / 2.0;
    BeamSplitter::new(C64::new(half.cos(), 0.0), C64::new(-half.sin(), 0.0), modes)
}

pub fn mz_unitary(theta: f64, modes: (usize, usize), layout: &ModeLayout) -> Result<LinearOperator> {
    bs_unitary(&mz_element(theta, modes)?, layout)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::expm;
    use proptest::prelude::*;

    fn two_modes(cutoff: usize) -> ModeLayout {
        ModeLayout::uniform(2, cutoff).unwrap()
    }

    /// Largest deviation of U^dagger U from identity on states whose pair total
    /// fits both cutoffs.
    fn sector_unitarity(u: &LinearOperator, layout: &ModeLayout, max_total: usize) -> f64 {
        let prod = u.matrix().adjoint() * u.matrix();
        let keep: Vec<usize> = (0..layout.total_dim())
            .filter(|&k| layout.total_photons(k) <= max_total)
            .collect();
        let mut worst = 0.0f64;
        for &a in &keep {
            for &b in &keep {
                let target = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((prod[(a, b)] - C64::new(target, 0.0)).norm());
            }
        }
        worst
    }

    #[test]
    fn rejects_lossy_or_degenerate_splitters() {
        assert!(BeamSplitter::new(C64::new(0.9, 0.0), C64::new(0.9, 0.0), (0, 1)).is_err());
        assert!(BeamSplitter::new(C64::new(1.0, 0.0), C64::new(0.0, 0.0), (1, 1)).is_err());
        assert!(BeamSplitter::from_transmittance(1.2, 0.0, (0, 1)).is_err());
    }

    #[test]
    fn single_photon_output_follows_convention() {
        let phi = 0.8;
        let bs = BeamSplitter::from_transmittance(0.5, phi, (0, 1)).unwrap();
        let layout = two_modes(2);
        let out = StateVector::basis(layout.clone(), &[1, 0])
            .unwrap()
            .apply(&bs_unitary(&bs, &layout).unwrap())
            .unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((out.amplitude(&[1, 0]).unwrap() - C64::new(h, 0.0)).norm() < 1e-15);
        assert!((out.amplitude(&[0, 1]).unwrap() + C64::from_polar(h, -phi)).norm() < 1e-15);
    }

    #[test]
    fn identity_splitter() {
        let bs = BeamSplitter::new(C64::new(1.0, 0.0), C64::new(0.0, 0.0), (0, 1)).unwrap();
        let layout = two_modes(3);
        let u = bs_unitary(&bs, &layout).unwrap();
        let id = LinearOperator::identity(layout);
        assert!((u.matrix() - id.matrix()).iter().all(|z| z.norm() < 1e-15));
    }

    #[test]
    fn hong_ou_mandel_dip() {
        let bs = BeamSplitter::symmetric((0, 1));
        let layout = two_modes(2);
        let out = StateVector::basis(layout.clone(), &[1, 1])
            .unwrap()
            .apply(&bs_unitary(&bs, &layout).unwrap())
            .unwrap();
        assert!(out.amplitude(&[1, 1]).unwrap().norm() < 1e-15);
        assert!((out.amplitude(&[2, 0]).unwrap().norm_sqr() - 0.5).abs() < 1e-14);
    }

    #[test]
    fn overflowing_support_trips_the_guard() {
        let layout = two_modes(2);
        let net = Network::new(layout.clone())
            .with(Element::BeamSplitter(BeamSplitter::symmetric((0, 1))))
            .unwrap();
        let ok = StateVector::basis(layout.clone(), &[1, 1]).unwrap();
        assert!(net.apply(&ok).is_ok());
        let too_big = StateVector::basis(layout, &[2, 2]).unwrap();
        assert!(matches!(net.apply(&too_big), Err(Error::CutoffTooSmall(_))));
    }

    #[test]
    fn local_application_matches_full_operator() {
        let layout = ModeLayout::new(vec![3, 4, 3]).unwrap();
        let net = Network::new(layout.clone())
            .with(Element::BeamSplitter(BeamSplitter::from_transmittance(0.3, 0.4, (2, 0)).unwrap()))
            .unwrap()
            .with(Element::PhaseShift { mode: 1, phi: 0.9 })
            .unwrap()
            .with(Element::BeamSplitter(BeamSplitter::from_transmittance(0.8, -1.0, (1, 2)).unwrap()))
            .unwrap();
        let psi = StateVector::superposition(
            layout,
            &[
                (C64::new(1.0, 0.0), vec![1, 0, 0]),
                (C64::new(0.3, 0.2), vec![0, 1, 1]),
                (C64::new(0.0, -0.5), vec![0, 0, 1]),
            ],
        )
        .unwrap();
        let local = net.apply(&psi).unwrap();
        let full = psi.apply(&net.operator().unwrap()).unwrap();
        for (a, b) in local.amplitudes().iter().zip(full.amplitudes().iter()) {
            assert!((a - b).norm() < 1e-14);
        }
    }

    #[test]
    fn mz_matches_generator_exponential() {
        let layout = two_modes(6);
        let theta = 1.3;
        let a = LinearOperator::mode_annihilation(&layout, 0).unwrap();
        let b = LinearOperator::mode_annihilation(&layout, 1).unwrap();
        let gen = (&(&b.adjoint() * &a) - &(&a.adjoint() * &b)).scaled(C64::new(theta / 2.0, 0.0));
        let oracle = expm(&gen.scaled(C64::i()), 1.0).unwrap();
        let u = mz_unitary(theta, (0, 1), &layout).unwrap();
        // Compare on sectors that do not reach the cutoff.
        for col in 0..layout.total_dim() {
            if layout.total_photons(col) > 6 {
                continue;
            }
            for row in 0..layout.total_dim() {
                assert!((u.matrix()[(row, col)] - oracle.matrix()[(row, col)]).norm() < 1e-10);
            }
        }
    }

    proptest! {
        #[test]
        fn splitters_are_unitary_and_number_conserving(
            transmittance in 0.0f64..=1.0,
            phi_t in -3.0f64..3.0,
            phi_r in -3.0f64..3.0,
        ) {
            let t = C64::from_polar(transmittance.sqrt(), phi_t);
            let r = C64::from_polar((1.0 - transmittance).sqrt(), phi_r);
            let bs = BeamSplitter::new(t, r, (1, 0)).unwrap();
            let layout = two_modes(5);
            let u = bs_unitary(&bs, &layout).unwrap();
            prop_assert!(sector_unitarity(&u, &layout, 5) < 1e-12);
            for row in 0..layout.total_dim() {
                for col in 0..layout.total_dim() {
                    if layout.total_photons(row) != layout.total_photons(col) {
                        prop_assert!(u.matrix()[(row, col)].norm() < 1e-12);
                    }
                }
            }
        }
    }
}
