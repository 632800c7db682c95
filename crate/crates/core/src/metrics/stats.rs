use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::fock::{LinearOperator, StateRef};

/// Tolerance below the vacuum level `1/4` that counts as squeezing.
pub const SQUEEZING_TOL: f64 = 1e-9;

/// Fock-basis populations. For a multimode state these are joint populations
/// in the layout's flat ordering.
pub fn photon_distribution<'a>(state: impl Into<StateRef<'a>>) -> Vec<f64> {
    state.into().populations()
}

/// Marginal photon-number distribution of one mode.
pub fn mode_distribution<'a>(state: impl Into<StateRef<'a>>, mode: usize) -> Result<Vec<f64>> {
    let state = state.into();
    let layout = state.layout();
    layout.check_mode(mode)?;
    let mut out = vec![0.0; layout.dims()[mode]];
    for (i, p) in state.populations().into_iter().enumerate() {
        out[layout.level(i, mode)] += p;
    }
    Ok(out)
}

pub fn mean_photon_number<'a>(state: impl Into<StateRef<'a>>, mode: usize) -> Result<f64> {
    Ok(mode_distribution(state, mode)?
        .iter()
        .enumerate()
        .map(|(n, p)| n as f64 * p)
        .sum())
}

/// Means and variances of `X1 = (a + a^dagger)/2` and `X2 = (a - a^dagger)/(2i)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureStats {
    pub mean_x1: f64,
    pub mean_x2: f64,
    pub var_x1: f64,
    pub var_x2: f64,
    /// One of the variances lies below `1/4 - SQUEEZING_TOL`.
    pub squeezed: bool,
}

impl QuadratureStats {
    pub fn uncertainty_product(&self) -> f64 {
        (self.var_x1 * self.var_x2).sqrt()
    }
}

/// Quadrature moments of `mode`, using the truncated ladder operators.
pub fn quadrature_stats<'a>(state: impl Into<StateRef<'a>>, mode: usize) -> Result<QuadratureStats> {
    let state = state.into();
    let layout = state.layout();
    let a = LinearOperator::mode_annihilation(layout, mode)?;
    let ad = a.adjoint();
    let half = C64::new(0.5, 0.0);
    let x1 = (&a + &ad).scaled(half);
    let x2 = (&a - &ad).scaled(C64::new(0.0, -0.5));
    let moment = |op: &LinearOperator| -> Result<f64> { Ok(state.expectation(op)?.re) };
    let mean_x1 = moment(&x1)?;
    let mean_x2 = moment(&x2)?;
    let var_x1 = moment(&(&x1 * &x1))? - mean_x1 * mean_x1;
    let var_x2 = moment(&(&x2 * &x2))? - mean_x2 * mean_x2;
    let squeezed = var_x1 < 0.25 - SQUEEZING_TOL || var_x2 < 0.25 - SQUEEZING_TOL;
    Ok(QuadratureStats {
        mean_x1,
        mean_x2,
        var_x1,
        var_x2,
        squeezed,
    })
}

/// Standard deviation of the single-mode standing-wave field
/// `E = epsilon (a + a^dagger) sin(kz)`, from `<a>`, `<a^2>` and `<n>` with
/// the canonical ordering `a a^dagger = n + 1`.
pub fn field_variance<'a>(state: impl Into<StateRef<'a>>, epsilon: f64, kz: f64) -> Result<f64> {
    let state = state.into();
    let layout = state.layout();
    if layout.num_modes() != 1 {
        return Err(Error::param("state", "field variance needs a single-mode state"));
    }
    if layout.dims()[0] < 2 {
        return Ok(epsilon.abs() * kz.sin().abs());
    }
    let a = LinearOperator::mode_annihilation(layout, 0)?;
    let n = LinearOperator::mode_number(layout, 0)?;
    let mean_a = state.expectation(&a)?;
    let mean_a2 = state.expectation(&(&a * &a))?;
    let mean_n = state.expectation(&n)?.re;
    let mean_sum = 2.0 * mean_a.re;
    let second = 2.0 * mean_a2.re + 2.0 * mean_n + 1.0;
    let var = (second - mean_sum * mean_sum).max(0.0);
    Ok(epsilon.abs() * kz.sin().abs() * var.sqrt())
}

/// `<E> = 2 epsilon Re<a> sin(kz)`.
pub fn mean_field<'a>(state: impl Into<StateRef<'a>>, epsilon: f64, kz: f64) -> Result<f64> {
    let state = state.into();
    let a = LinearOperator::mode_annihilation(state.layout(), 0)?;
    Ok(2.0 * epsilon * state.expectation(&a)?.re * kz.sin())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::DensityMatrix;
    use crate::states::{fock, squeezed_amplitudes, tcs, SqueezeSpec};

    #[test]
    fn fock_distribution_is_a_delta() {
        let p = photon_distribution(&fock(2, 5).unwrap());
        assert_eq!(p, vec![0.0, 0.0, 1.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn coherent_vacuum_probability() {
        let p = photon_distribution(&tcs(C64::new(1.0, 0.0), 40).unwrap());
        assert!((p[0] - (-1.0f64).exp()).abs() < 1e-12);
        assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn squeezed_vacuum_has_no_odd_populations() {
        let s = squeezed_amplitudes(SqueezeSpec::vacuum(C64::new(0.7, 0.0), 30)).unwrap();
        let p = photon_distribution(&s.state);
        assert!(p.iter().skip(1).step_by(2).all(|&x| x == 0.0));
    }

    #[test]
    fn vacuum_quadratures() {
        let q = quadrature_stats(&fock(0, 5).unwrap(), 0).unwrap();
        assert!((q.var_x1 - 0.25).abs() < 1e-15);
        assert!((q.var_x2 - 0.25).abs() < 1e-15);
        assert!(!q.squeezed);
    }

    #[test]
    fn coherent_quadrature_means() {
        let alpha = C64::new(0.6, -0.4);
        let q = quadrature_stats(&tcs(alpha, 40).unwrap(), 0).unwrap();
        assert!((q.mean_x1 - alpha.re).abs() < 1e-12);
        assert!((q.mean_x2 - alpha.im).abs() < 1e-12);
    }

    #[test]
    fn squeezed_vacuum_variance() {
        let r = 0.5f64;
        let s = squeezed_amplitudes(SqueezeSpec::vacuum(C64::new(r, 0.0), 40)).unwrap();
        let q = quadrature_stats(&s.state, 0).unwrap();
        assert!((q.var_x1 - (-2.0 * r).exp() / 4.0).abs() < 1e-9);
        assert!((q.var_x2 - (2.0 * r).exp() / 4.0).abs() < 1e-9);
        assert!(q.squeezed);
        assert!(q.var_x1 * q.var_x2 >= 1.0 / 16.0 - 1e-9);
    }

    #[test]
    fn field_statistics_of_number_states() {
        let (eps, kz) = (0.7f64, 1.1f64);
        for n in 0..5 {
            let s = fock(n, 8).unwrap();
            let expected = 2f64.sqrt() * eps * (n as f64 + 0.5).sqrt() * kz.sin().abs();
            assert!((field_variance(&s, eps, kz).unwrap() - expected).abs() < 1e-14);
            assert_eq!(mean_field(&s, eps, kz).unwrap(), 0.0);
        }
        let vac = field_variance(&fock(0, 3).unwrap(), eps, kz).unwrap();
        assert!((vac - eps * kz.sin().abs()).abs() < 1e-15);
    }

    #[test]
    fn mixed_state_marginals() {
        let rho = DensityMatrix::from_populations(
            crate::fock::ModeLayout::uniform(2, 1).unwrap(),
            &[0.1, 0.2, 0.3, 0.4],
        )
        .unwrap();
        let m0 = mode_distribution(&rho, 0).unwrap();
        assert!((m0[1] - 0.7).abs() < 1e-15);
        assert!((mean_photon_number(&rho, 1).unwrap() - 0.6).abs() < 1e-15);
    }
}
