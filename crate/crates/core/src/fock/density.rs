use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64 as C64;

use super::layout::ModeLayout;
use super::operator::LinearOperator;
use super::state::StateVector;
use crate::error::{Error, Result};

/// Density matrix on a truncated multimode Fock space.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    layout: ModeLayout,
    rho: DMatrix<C64>,
}

impl DensityMatrix {
    pub fn new(layout: ModeLayout, rho: DMatrix<C64>) -> Result<Self> {
        let d = layout.total_dim();
        if rho.nrows() != d || rho.ncols() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: rho.nrows().max(rho.ncols()),
            });
        }
        if rho.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("density matrix"));
        }
        Ok(Self { layout, rho })
    }

    pub fn from_pure(state: &StateVector) -> Self {
        let v = state.amplitudes();
        Self {
            layout: state.layout().clone(),
            rho: v * v.adjoint(),
        }
    }

    /// Diagonal state with the given basis populations.
    pub fn from_populations(layout: ModeLayout, populations: &[f64]) -> Result<Self> {
        if populations.len() != layout.total_dim() {
            return Err(Error::DimensionMismatch {
                expected: layout.total_dim(),
                got: populations.len(),
            });
        }
        let diag = nalgebra::DVector::from_iterator(
            populations.len(),
            populations.iter().map(|&p| C64::new(p, 0.0)),
        );
        Self::new(layout, DMatrix::from_diagonal(&diag))
    }

    pub fn layout(&self) -> &ModeLayout {
        &self.layout
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.rho
    }

    pub fn into_matrix(self) -> DMatrix<C64> {
        self.rho
    }

    pub fn dim(&self) -> usize {
        self.rho.nrows()
    }

    pub fn trace(&self) -> C64 {
        self.rho.trace()
    }

    pub fn purity(&self) -> f64 {
        (&self.rho * &self.rho).trace().re
    }

    pub fn populations(&self) -> Vec<f64> {
        (0..self.dim()).map(|i| self.rho[(i, i)].re).collect()
    }

    /// `Tr(rho A)`.
    pub fn expectation(&self, op: &LinearOperator) -> Result<C64> {
        self.check_layout(op.layout())?;
        let mut acc = C64::new(0.0, 0.0);
        let d = self.dim();
        for i in 0..d {
            for k in 0..d {
                acc += self.rho[(i, k)] * op.matrix()[(k, i)];
            }
        }
        Ok(acc)
    }

    /// Divides by the trace. Fails when the trace vanishes.
    pub fn normalized(mut self) -> Result<Self> {
        let t = self.trace().re;
        if !(t > 0.0) || !t.is_finite() {
            return Err(Error::ZeroNorm);
        }
        self.rho /= C64::new(t, 0.0);
        Ok(self)
    }

    pub fn hermiticity_deviation(&self) -> f64 {
        let d = self.dim();
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in i..d {
                worst = worst.max((self.rho[(i, j)] - self.rho[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// Eigenvalues of the Hermitian part, ascending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues(&self.rho)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues().first().copied().unwrap_or(0.0)
    }

    /// Population of basis states in which `mode` sits at its cutoff level.
    pub fn top_population(&self, mode: usize) -> Result<f64> {
        self.layout.check_mode(mode)?;
        let top = self.layout.dims()[mode] - 1;
        Ok((0..self.dim())
            .filter(|&i| self.layout.level(i, mode) == top)
            .map(|i| self.rho[(i, i)].re)
            .sum())
    }

    pub fn max_top_population(&self) -> f64 {
        (0..self.layout.num_modes())
            .filter(|&m| self.layout.dims()[m] > 1)
            .map(|m| self.top_population(m).unwrap_or(0.0))
            .fold(0.0, f64::max)
    }

    /// Reduced state on `keep` (in the listed order), tracing out the rest.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityMatrix> {
        if keep.is_empty() {
            return Err(Error::EmptyInput("modes to keep"));
        }
        let n = self.layout.num_modes();
        let mut seen = vec![false; n];
        for &m in keep {
            self.layout.check_mode(m)?;
            if std::mem::replace(&mut seen[m], true) {
                return Err(Error::param("keep", format!("mode {m} listed twice")));
            }
        }
        let traced: Vec<usize> = (0..n).filter(|m| !seen[*m]).collect();
        let kept_layout = self.layout.sub_layout(keep)?;
        let dk = kept_layout.total_dim();
        let traced_dims: Vec<usize> = traced.iter().map(|&m| self.layout.dims()[m]).collect();
        let dt: usize = traced_dims.iter().product();
        let strides = self.layout.strides();

        // full[k * dt + t] = flat index of (kept multi-index k, traced multi-index t)
        let mut full = vec![0usize; dk * dt];
        for k in 0..dk {
            let km = kept_layout.multi_index(k);
            let base: usize = keep.iter().zip(&km).map(|(&m, &l)| strides[m] * l).sum();
            let mut t_rem;
            for t in 0..dt {
                t_rem = t;
                let mut off = 0;
                for (j, &m) in traced.iter().enumerate().rev() {
                    off += strides[m] * (t_rem % traced_dims[j]);
                    t_rem /= traced_dims[j];
                }
                full[k * dt + t] = base + off;
            }
        }

        let mut out = DMatrix::zeros(dk, dk);
        for r in 0..dk {
            for c in 0..dk {
                let mut acc = C64::new(0.0, 0.0);
                for t in 0..dt {
                    acc += self.rho[(full[r * dt + t], full[c * dt + t])];
                }
                out[(r, c)] = acc;
            }
        }
        DensityMatrix::new(kept_layout, out)
    }

    /// Partial transpose over `mode`. The result need not be positive.
    pub fn partial_transpose(&self, mode: usize) -> Result<LinearOperator> {
        self.layout.check_mode(mode)?;
        let d = self.dim();
        let local = self.layout.dims()[mode];
        let stride = self.layout.strides()[mode];
        let mut out = DMatrix::zeros(d, d);
        for i in 0..d {
            let li = (i / stride) % local;
            let bi = i - li * stride;
            for j in 0..d {
                let lj = (j / stride) % local;
                let bj = j - lj * stride;
                out[(bi + lj * stride, bj + li * stride)] = self.rho[(i, j)];
            }
        }
        LinearOperator::new(self.layout.clone(), out)
    }

    /// Matrix restricted to the listed basis states (multi-indices), in order.
    pub fn project(&self, basis: &[Vec<usize>]) -> Result<DMatrix<C64>> {
        let idx: Vec<usize> = basis
            .iter()
            .map(|occ| self.layout.index_of(occ))
            .collect::<Result<_>>()?;
        Ok(DMatrix::from_fn(idx.len(), idx.len(), |r, c| {
            self.rho[(idx[r], idx[c])]
        }))
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

/// Eigenvalues of `(m + m^dagger) / 2`, ascending.
pub fn hermitian_eigenvalues(m: &DMatrix<C64>) -> Vec<f64> {
    let h = (m + m.adjoint()) * C64::new(0.5, 0.0);
    let mut ev: Vec<f64> = SymmetricEigen::new(h).eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| a.total_cmp(b));
    ev
}

/// Either a pure or a mixed state, for routines that accept both.
#[derive(Debug, Clone, Copy)]
pub enum StateRef<'a> {
    Pure(&'a StateVector),
    Mixed(&'a DensityMatrix),
}

impl<'a> StateRef<'a> {
    pub fn layout(&self) -> &'a ModeLayout {
        match self {
            StateRef::Pure(s) => s.layout(),
            StateRef::Mixed(r) => r.layout(),
        }
    }

    pub fn to_density(&self) -> DensityMatrix {
        match self {
            StateRef::Pure(s) => DensityMatrix::from_pure(s),
            StateRef::Mixed(r) => (*r).clone(),
        }
    }

    /// Diagonal in the Fock basis.
    pub fn populations(&self) -> Vec<f64> {
        match self {
            StateRef::Pure(s) => s.probabilities(),
            StateRef::Mixed(r) => r.populations(),
        }
    }

    pub fn expectation(&self, op: &LinearOperator) -> Result<C64> {
        match self {
            StateRef::Pure(s) => s.expectation(op),
            StateRef::Mixed(r) => r.expectation(op),
        }
    }
}

impl<'a> From<&'a StateVector> for StateRef<'a> {
    fn from(s: &'a StateVector) -> Self {
        StateRef::Pure(s)
    }
}

impl<'a> From<&'a DensityMatrix> for StateRef<'a> {
    fn from(r: &'a DensityMatrix) -> Self {
        StateRef::Mixed(r)
    }
}
