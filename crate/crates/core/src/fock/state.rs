use nalgebra::DVector;
use num_complex::Complex64 as C64;

use super::layout::ModeLayout;
use super::operator::LinearOperator;
use crate::error::{Error, Result};

/// Population above which truncation leakage is reported through `log::warn!`.
pub const LEAKAGE_WARN_THRESHOLD: f64 = 1e-6;

/// Pure state on a truncated multimode Fock space.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    layout: ModeLayout,
    amps: DVector<C64>,
}

impl StateVector {
    pub fn new(layout: ModeLayout, amps: DVector<C64>) -> Result<Self> {
        if amps.len() != layout.total_dim() {
            return Err(Error::DimensionMismatch {
                expected: layout.total_dim(),
                got: amps.len(),
            });
        }
        if amps.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("state amplitudes"));
        }
        Ok(Self { layout, amps })
    }

    pub fn from_vec(layout: ModeLayout, amps: Vec<C64>) -> Result<Self> {
        Self::new(layout, DVector::from_vec(amps))
    }

    pub fn zeros(layout: ModeLayout) -> Self {
        let dim = layout.total_dim();
        Self {
            layout,
            amps: DVector::zeros(dim),
        }
    }

    pub fn vacuum(layout: ModeLayout) -> Self {
        let mut s = Self::zeros(layout);
        s.amps[0] = C64::new(1.0, 0.0);
        s
    }

    /// Product Fock state `|n_0, .., n_{f-1}>`.
    pub fn basis(layout: ModeLayout, occupations: &[usize]) -> Result<Self> {
        let idx = layout.index_of(occupations)?;
        let mut s = Self::zeros(layout);
        s.amps[idx] = C64::new(1.0, 0.0);
        Ok(s)
    }

    /// Superposition `sum_k c_k |occ_k>`, normalized.
    pub fn superposition(layout: ModeLayout, terms: &[(C64, Vec<usize>)]) -> Result<Self> {
        let mut s = Self::zeros(layout);
        for (c, occ) in terms {
            let idx = s.layout.index_of(occ)?;
            s.amps[idx] += *c;
        }
        s.normalized()
    }

    pub fn layout(&self) -> &ModeLayout {
        &self.layout
    }

    pub fn amplitudes(&self) -> &DVector<C64> {
        &self.amps
    }

    pub fn amplitudes_mut(&mut self) -> &mut DVector<C64> {
        &mut self.amps
    }

    pub fn into_amplitudes(self) -> DVector<C64> {
        self.amps
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitude(&self, occupations: &[usize]) -> Result<C64> {
        Ok(self.amps[self.layout.index_of(occupations)?])
    }

    pub fn norm(&self) -> f64 {
        self.amps.norm()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.norm_squared()
    }

    pub fn normalize(&mut self) -> Result<()> {
        let n = self.norm();
        if !(n > 0.0) || !n.is_finite() {
            return Err(Error::ZeroNorm);
        }
        self.amps /= C64::new(n, 0.0);
        Ok(())
    }

    pub fn normalized(mut self) -> Result<Self> {
        self.normalize()?;
        Ok(self)
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &StateVector) -> Result<C64> {
        self.check_layout(other.layout())?;
        Ok(self.amps.dotc(&other.amps))
    }

    pub fn apply(&self, op: &LinearOperator) -> Result<StateVector> {
        self.check_layout(op.layout())?;
        Ok(Self {
            layout: self.layout.clone(),
            amps: op.matrix() * &self.amps,
        })
    }

    pub fn expectation(&self, op: &LinearOperator) -> Result<C64> {
        self.check_layout(op.layout())?;
        Ok(self.amps.dotc(&(op.matrix() * &self.amps)))
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|z| z.norm_sqr()).collect()
    }

    /// Population of basis states in which `mode` sits at its cutoff level.
    pub fn top_population(&self, mode: usize) -> Result<f64> {
        self.layout.check_mode(mode)?;
        let top = self.layout.dims()[mode] - 1;
        Ok((0..self.dim())
            .filter(|&i| self.layout.level(i, mode) == top)
            .map(|i| self.amps[i].norm_sqr())
            .sum())
    }

    /// Largest top-level population over all modes. Modes with a single
    /// retained level are skipped.
    pub fn max_top_population(&self) -> f64 {
        (0..self.layout.num_modes())
            .filter(|&m| self.layout.dims()[m] > 1)
            .map(|m| self.top_population(m).unwrap_or(0.0))
            .fold(0.0, f64::max)
    }

    /// Population outside the span of the listed basis states.
    pub fn population_outside(&self, occupations: &[Vec<usize>]) -> Result<f64> {
        let mut inside = 0.0;
        for occ in occupations {
            inside += self.amps[self.layout.index_of(occ)?].norm_sqr();
        }
        Ok((self.norm_sqr() - inside).max(0.0))
    }

    pub(crate) fn check_layout(&self, other: &ModeLayout) -> Result<()> {
        if &self.layout == other {
            Ok(())
        } else {
            Err(Error::LayoutMismatch {
                left: self.layout.dims().to_vec(),
                right: other.dims().to_vec(),
            })
        }
    }
}

/// Emits a warning when `population` exceeds [`LEAKAGE_WARN_THRESHOLD`].
pub fn warn_on_leakage(context: &str, population: f64) {
    if population > LEAKAGE_WARN_THRESHOLD {
        log::warn!("{context}: top-level population {population:.3e} exceeds {LEAKAGE_WARN_THRESHOLD:.0e}");
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_state_and_inner_product() {
        let layout = ModeLayout::uniform(2, 2).unwrap();
        let a = StateVector::basis(layout.clone(), &[1, 0]).unwrap();
        let b = StateVector::basis(layout.clone(), &[0, 1]).unwrap();
        assert_eq!(a.inner(&b).unwrap(), C64::new(0.0, 0.0));
        assert_eq!(a.inner(&a).unwrap(), C64::new(1.0, 0.0));
        assert_eq!(a.amplitudes()[3], C64::new(1.0, 0.0));
    }

    #[test]
    fn zero_vector_cannot_be_normalized() {
        let s = StateVector::zeros(ModeLayout::single(3));
        assert_eq!(s.normalized().unwrap_err(), Error::ZeroNorm);
    }

    #[test]
    fn top_population_counts_cutoff_level() {
        let layout = ModeLayout::uniform(2, 1).unwrap();
        let s = StateVector::superposition(
            layout,
            &[
                (C64::new(1.0, 0.0), vec![0, 0]),
                (C64::new(1.0, 0.0), vec![0, 1]),
            ],
        )
        .unwrap();
        assert!((s.top_population(1).unwrap() - 0.5).abs() < 1e-15);
        assert!(s.top_population(0).unwrap().abs() < 1e-15);
        assert!((s.max_top_population() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn mismatched_layouts_are_rejected() {
        let a = StateVector::vacuum(ModeLayout::single(2));
        let b = StateVector::vacuum(ModeLayout::single(3));
        assert!(matches!(a.inner(&b), Err(Error::LayoutMismatch { .. })));
    }
}
