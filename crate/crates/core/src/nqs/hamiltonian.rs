use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::fock::{expm, LinearOperator, ModeLayout, StateVector};

/// Relative Hermiticity tolerance applied to every assembled Hamiltonian.
pub const HERMITICITY_TOL: f64 = 1e-12;

/// Mode-mode interaction of a Kerr coupler.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Coupling {
    /// `eps a^dag b + h.c.`
    Linear(C64),
    /// `eps a^dag^2 b^2 + h.c.`
    Nonlinear(C64),
    /// `g a^dag b^dag + h.c.`
    Parametric(C64),
    /// Linear exchange `eps` between every pair of three modes.
    Triple(C64),
}

impl Coupling {
    pub fn num_modes(&self) -> usize {
        match self {
            Coupling::Triple(_) => 3,
            _ => 2,
        }
    }

    pub fn strength(&self) -> C64 {
        match *self {
            Coupling::Linear(e) | Coupling::Nonlinear(e) | Coupling::Parametric(e) | Coupling::Triple(e) => e,
        }
    }

    /// Lowest cutoff at which the coupling term is not identically zero.
    fn min_cutoff(&self) -> usize {
        match self {
            Coupling::Nonlinear(_) => 2,
            _ => 1,
        }
    }
}

/// Kerr oscillators `(chi_k / 2) a_k^dag^2 a_k^2` with a mutual coupling and
/// coherent drives `alpha_k a_k^dag + h.c.`.
#[derive(Debug, Clone, PartialEq)]
pub struct KerrCouplerSpec {
    pub chi: Vec<f64>,
    pub coupling: Coupling,
    pub drives: Vec<C64>,
    pub cutoffs: Vec<usize>,
}

impl KerrCouplerSpec {
    pub fn linear(chi: f64, epsilon: C64, alpha: C64, beta: C64, cutoff: usize) -> Self {
        Self {
            chi: vec![chi; 2],
            coupling: Coupling::Linear(epsilon),
            drives: vec![alpha, beta],
            cutoffs: vec![cutoff; 2],
        }
    }

    /// Drive on mode `a` only.
    pub fn nonlinear(chi: f64, epsilon: C64, alpha: C64, cutoff: usize) -> Self {
        Self {
            chi: vec![chi; 2],
            coupling: Coupling::Nonlinear(epsilon),
            drives: vec![alpha, C64::new(0.0, 0.0)],
            cutoffs: vec![cutoff; 2],
        }
    }

    pub fn parametric(chi: f64, g: C64, cutoff: usize) -> Self {
        Self {
            chi: vec![chi; 2],
            coupling: Coupling::Parametric(g),
            drives: vec![C64::new(0.0, 0.0); 2],
            cutoffs: vec![cutoff; 2],
        }
    }

    pub fn triple(chi: f64, epsilon: C64, cutoff: usize) -> Self {
        Self {
            chi: vec![chi; 3],
            coupling: Coupling::Triple(epsilon),
            drives: vec![C64::new(0.0, 0.0); 3],
            cutoffs: vec![cutoff; 3],
        }
    }

    pub fn layout(&self) -> Result<ModeLayout> {
        ModeLayout::new(self.cutoffs.iter().map(|c| c + 1).collect())
    }

    pub fn validate(&self) -> Result<()> {
        let m = self.coupling.num_modes();
        for (name, len) in [("chi", self.chi.len()), ("drives", self.drives.len()), ("cutoffs", self.cutoffs.len())] {
            if len != m {
                return Err(Error::param(name, format!("expected {m} entries, got {len}")));
            }
        }
        if self.chi.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite("Kerr constant"));
        }
        let s = self.coupling.strength();
        if !(s.re.is_finite() && s.im.is_finite()) {
            return Err(Error::NonFinite("coupling strength"));
        }
        if self.drives.iter().any(|d| !(d.re.is_finite() && d.im.is_finite())) {
            return Err(Error::NonFinite("drive amplitude"));
        }
        let need = self.coupling.min_cutoff();
        if let Some(c) = self.cutoffs.iter().find(|&&c| c < need) {
            return Err(Error::CutoffTooSmall(format!(
                "coupling needs cutoff >= {need} on every mode, got {c}"
            )));
        }
        Ok(())
    }
}

fn ladder(layout: &ModeLayout, mode: usize) -> Result<(LinearOperator, LinearOperator)> {
    let a = LinearOperator::mode_annihilation(layout, mode)?;
    let ad = a.adjoint();
    Ok((a, ad))
}

/// Hermitian part `x + x^dag`.
fn plus_hc(x: &LinearOperator) -> LinearOperator {
    x + &x.adjoint()
}

fn check_hermitian(h: LinearOperator) -> Result<LinearOperator> {
    if !h.is_finite() {
        return Err(Error::NonFinite("Hamiltonian"));
    }
    let scale = h.matrix().iter().map(|z| z.norm()).fold(1.0, f64::max);
    let dev = h.hermiticity_deviation();
    if dev > HERMITICITY_TOL * scale {
        return Err(Error::NotHermitian(dev));
    }
    Ok(h)
}

/// Assembles the coupler Hamiltonian on the layout given by `spec.cutoffs`.
pub fn build_hamiltonian(spec: &KerrCouplerSpec) -> Result<LinearOperator> {
    spec.validate()?;
    let layout = spec.layout()?;
    let modes = spec.coupling.num_modes();
    let ops: Vec<_> = (0..modes).map(|k| ladder(&layout, k)).collect::<Result<_>>()?;

    let mut h = LinearOperator::zeros(layout.clone());
    for (k, (a, ad)) in ops.iter().enumerate() {
        let kerr = &(&(ad * ad) * a) * a;
        h = &h + &kerr.scaled(C64::new(spec.chi[k] / 2.0, 0.0));
        h = &h + &plus_hc(&ad.scaled(spec.drives[k]));
    }
    let ad = &ops[0].1;
    let (b, bd) = (&ops[1].0, &ops[1].1);
    let term = match spec.coupling {
        Coupling::Linear(e) => plus_hc(&(ad * b).scaled(e)),
        Coupling::Nonlinear(e) => plus_hc(&(&(&(ad * ad) * b) * b).scaled(e)),
        Coupling::Parametric(g) => plus_hc(&(ad * bd).scaled(g)),
        Coupling::Triple(e) => {
            let (c, _) = &ops[2];
            let ab = plus_hc(&(ad * b).scaled(e));
            let ac = plus_hc(&(ad * c).scaled(e));
            let bc = plus_hc(&(bd * c).scaled(e));
            &(&ab + &ac) + &bc
        }
    };
    check_hermitian(&h + &term)
}

/// Two-mode self- and cross-Kerr Hamiltonian
/// `w_a n_a + w_b n_b + 2 chi_ab n_a n_b + (chi_a/2) n_a^2 + (chi_b/2) n_b^2`.
pub fn cross_kerr_hamiltonian(omega: [f64; 2], chi: [f64; 2], chi_ab: f64, cutoff: usize) -> Result<LinearOperator> {
    if omega.iter().chain(&chi).chain([&chi_ab]).any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("cross-Kerr parameter"));
    }
    let layout = ModeLayout::uniform(2, cutoff)?;
    Ok(LinearOperator::diagonal(layout, |m| {
        let (na, nb) = (m[0] as f64, m[1] as f64);
        C64::new(
            omega[0] * na + omega[1] * nb + 2.0 * chi_ab * na * nb + 0.5 * (chi[0] * na * na + chi[1] * nb * nb),
            0.0,
        )
    }))
}

/// Power of the annihilation operator inside the Fock-state-generating
/// Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KilinForm {
    /// `a^2` for every target `n`.
    Printed,
    /// `a^n`.
    PowerN,
}

/// `[(1 - n_op/n) a^k / sqrt(n!) + h.c.]` with `k` set by `form`.
pub fn kilin_hamiltonian(n: usize, cutoff: usize, form: KilinForm) -> Result<LinearOperator> {
    if n == 0 {
        return Err(Error::param("n", "target Fock level must be >= 1"));
    }
    if cutoff <= n {
        return Err(Error::CutoffTooSmall(format!("need cutoff > {n}, got {cutoff}")));
    }
    let layout = ModeLayout::single(cutoff);
    let k = match form {
        KilinForm::Printed => 2,
        KilinForm::PowerN => n as u32,
    };
    let lowering = LinearOperator::annihilation(cutoff)?.pow(k);
    let factor = LinearOperator::diagonal(layout, |m| C64::new(1.0 - m[0] as f64 / n as f64, 0.0));
    let norm = (1..=n).map(|j| j as f64).product::<f64>().sqrt();
    let x = (&factor * &lowering).scaled(C64::new(1.0 / norm, 0.0));
    check_hermitian(plus_hc(&x))
}

/// Fidelity of `exp(i t H_n)|0>` to `|n>` at `t = pi/2`.
#[derive(Debug, Clone, PartialEq)]
pub struct KilinCheck {
    pub n: usize,
    pub form: KilinForm,
    pub fidelity: f64,
    /// `1 - fidelity <= 1e-6`.
    pub passed: bool,
}

pub const KILIN_DEFICIT_TOL: f64 = 1e-6;

pub fn kilin_property(n: usize, cutoff: usize, form: KilinForm) -> Result<KilinCheck> {
    let h = kilin_hamiltonian(n, cutoff, form)?;
    let layout = h.layout().clone();
    let u = expm(&h, -std::f64::consts::FRAC_PI_2)?;
    let out = StateVector::vacuum(layout.clone()).apply(&u)?;
    let fidelity = out.amplitude(&[n])?.norm_sqr();
    let passed = 1.0 - fidelity <= KILIN_DEFICIT_TOL;
    if !passed {
        log::warn!("Fock generator for n = {n} ({form:?}) reaches |n> with fidelity {fidelity:.6}");
    }
    Ok(KilinCheck {
        n,
        form,
        fidelity,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn element(h: &LinearOperator, row: &[usize], col: &[usize]) -> C64 {
        let l = h.layout();
        h.matrix()[(l.index_of(row).unwrap(), l.index_of(col).unwrap())]
    }

    #[test]
    fn linear_coupling_matrix_element() {
        let eps = c(0.3, -0.2);
        let h = build_hamiltonian(&KerrCouplerSpec::linear(1.0, eps, c(0.0, 0.0), c(0.0, 0.0), 3)).unwrap();
        assert!((element(&h, &[1, 0], &[0, 1]) - eps).norm() < 1e-15);
        assert!((element(&h, &[0, 1], &[1, 0]) - eps.conj()).norm() < 1e-15);
    }

    #[test]
    fn nonlinear_coupling_matrix_element() {
        let eps = c(0.05, 0.01);
        let h = build_hamiltonian(&KerrCouplerSpec::nonlinear(1.0, eps, c(0.0, 0.0), 4)).unwrap();
        assert!((element(&h, &[2, 0], &[0, 2]) - eps * 2.0).norm() < 1e-14);
    }

    #[test]
    fn kerr_diagonal_and_drive() {
        let chi = 0.8;
        let alpha = c(0.1, 0.2);
        let h = build_hamiltonian(&KerrCouplerSpec::linear(chi, c(0.0, 0.0), alpha, c(0.0, 0.0), 4)).unwrap();
        for n in 0usize..=4 {
            let expected = chi / 2.0 * (n * n.saturating_sub(1)) as f64;
            assert!((element(&h, &[n, 0], &[n, 0]).re - expected).abs() < 1e-13);
        }
        assert!((element(&h, &[1, 0], &[0, 0]) - alpha).norm() < 1e-15);
        assert!((element(&h, &[3, 1], &[2, 1]) - alpha * 3f64.sqrt()).norm() < 1e-14);
    }

    #[test]
    fn parametric_and_triple_elements() {
        let g = c(0.02, 0.0);
        let h = build_hamiltonian(&KerrCouplerSpec::parametric(1.0, g, 3)).unwrap();
        assert!((element(&h, &[1, 1], &[0, 0]) - g).norm() < 1e-15);
        assert!((element(&h, &[2, 2], &[1, 1]) - g * 2.0).norm() < 1e-14);

        let e = c(0.1, 0.0);
        let h = build_hamiltonian(&KerrCouplerSpec::triple(1.0, e, 2)).unwrap();
        assert!((element(&h, &[1, 0, 0], &[0, 0, 1]) - e).norm() < 1e-15);
        assert!((element(&h, &[0, 1, 0], &[0, 0, 1]) - e).norm() < 1e-15);
        assert!((element(&h, &[1, 0, 0], &[0, 1, 0]) - e).norm() < 1e-15);
    }

    #[test]
    fn undriven_linear_coupler_conserves_photon_number() {
        let h = build_hamiltonian(&KerrCouplerSpec::linear(1.0, c(0.3, 0.4), c(0.0, 0.0), c(0.0, 0.0), 4)).unwrap();
        let l = h.layout().clone();
        let n = LinearOperator::diagonal(l, |m| C64::new((m[0] + m[1]) as f64, 0.0));
        let comm = h.commutator(&n).unwrap();
        assert!(comm.matrix().iter().all(|z| z.norm() < 1e-12));
    }

    #[test]
    fn cross_kerr_is_diagonal() {
        let h = cross_kerr_hamiltonian([0.3, 0.5], [1.0, 1.0], 1.0, 4).unwrap();
        let m = h.matrix();
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                if i != j {
                    assert_eq!(m[(i, j)], c(0.0, 0.0));
                }
            }
        }
        assert!((element(&h, &[2, 3], &[2, 3]).re - (0.6 + 1.5 + 12.0 + 2.0 + 4.5)).abs() < 1e-13);
    }

    #[test]
    fn invalid_specs_are_rejected() {
        let mut s = KerrCouplerSpec::linear(1.0, c(0.1, 0.0), c(0.0, 0.0), c(0.0, 0.0), 3);
        s.chi.push(1.0);
        assert!(build_hamiltonian(&s).is_err());
        let s = KerrCouplerSpec::nonlinear(1.0, c(0.1, 0.0), c(0.0, 0.0), 1);
        assert!(matches!(build_hamiltonian(&s), Err(Error::CutoffTooSmall(_))));
        let s = KerrCouplerSpec::linear(f64::NAN, c(0.1, 0.0), c(0.0, 0.0), c(0.0, 0.0), 3);
        assert!(build_hamiltonian(&s).is_err());
    }

    #[test]
    fn fock_generator_property() {
        for n in 1..=4 {
            let chk = kilin_property(n, n + 3, KilinForm::PowerN).unwrap();
            assert!(chk.passed, "{chk:?}");
        }
        assert!(kilin_property(2, 5, KilinForm::Printed).unwrap().passed);
        let printed3 = kilin_property(3, 6, KilinForm::Printed).unwrap();
        assert!(!printed3.passed);
        assert!(printed3.fidelity < 1e-12);
        assert!(kilin_hamiltonian(3, 3, KilinForm::PowerN).is_err());
    }

    proptest! {
        #[test]
        fn hamiltonians_are_hermitian(
            chi in -2.0f64..2.0, er in -0.5f64..0.5, ei in -0.5f64..0.5,
            ar in -0.3f64..0.3, ai in -0.3f64..0.3, kind in 0usize..4, cutoff in 2usize..5,
        ) {
            let e = c(er, ei);
            let a = c(ar, ai);
            let spec = match kind {
                0 => KerrCouplerSpec::linear(chi, e, a, a.conj(), cutoff),
                1 => KerrCouplerSpec::nonlinear(chi, e, a, cutoff),
                2 => KerrCouplerSpec::parametric(chi, e, cutoff),
                _ => KerrCouplerSpec::triple(chi, e, cutoff.min(3)),
            };
            let h = build_hamiltonian(&spec).unwrap();
            prop_assert!(h.hermiticity_deviation() <= 1e-12);
        }
    }
}
