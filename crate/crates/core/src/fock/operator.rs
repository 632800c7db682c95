use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;

use super::layout::ModeLayout;
use crate::error::{Error, Result};

/// Dense operator on a truncated multimode Fock space.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearOperator {
    layout: ModeLayout,
    matrix: DMatrix<C64>,
}

impl LinearOperator {
    pub fn new(layout: ModeLayout, matrix: DMatrix<C64>) -> Result<Self> {
        let d = layout.total_dim();
        if matrix.nrows() != d || matrix.ncols() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: matrix.nrows().max(matrix.ncols()),
            });
        }
        Ok(Self { layout, matrix })
    }

    pub fn identity(layout: ModeLayout) -> Self {
        let d = layout.total_dim();
        Self {
            layout,
            matrix: DMatrix::identity(d, d),
        }
    }

    pub fn zeros(layout: ModeLayout) -> Self {
        let d = layout.total_dim();
        Self {
            layout,
            matrix: DMatrix::zeros(d, d),
        }
    }

    /// Diagonal operator whose entry at each basis state is `f(multi_index)`.
    pub fn diagonal(layout: ModeLayout, f: impl Fn(&[usize]) -> C64) -> Self {
        let diag: Vec<C64> = layout.iter_multi().map(|m| f(&m)).collect();
        Self {
            matrix: DMatrix::from_diagonal(&DVector::from_vec(diag)),
            layout,
        }
    }

    /// Truncated annihilation operator on a single mode with levels `0..=cutoff`.
    pub fn annihilation(cutoff: usize) -> Result<Self> {
        if cutoff == 0 {
            return Err(Error::CutoffTooSmall(
                "ladder operators need at least two levels".into(),
            ));
        }
        let d = cutoff + 1;
        let mut m = DMatrix::zeros(d, d);
        for n in 1..d {
            m[(n - 1, n)] = C64::new((n as f64).sqrt(), 0.0);
        }
        Ok(Self {
            layout: ModeLayout::single(cutoff),
            matrix: m,
        })
    }

    pub fn creation(cutoff: usize) -> Result<Self> {
        Ok(Self::annihilation(cutoff)?.adjoint())
    }

    pub fn number(cutoff: usize) -> Self {
        Self::diagonal(ModeLayout::single(cutoff), |m| C64::new(m[0] as f64, 0.0))
    }

    /// Annihilation operator of `mode` inside `layout`.
    pub fn mode_annihilation(layout: &ModeLayout, mode: usize) -> Result<Self> {
        Self::annihilation(layout.cutoff(mode)?)?.embed(mode, layout)
    }

    pub fn mode_creation(layout: &ModeLayout, mode: usize) -> Result<Self> {
        Ok(Self::mode_annihilation(layout, mode)?.adjoint())
    }

    pub fn mode_number(layout: &ModeLayout, mode: usize) -> Result<Self> {
        layout.check_mode(mode)?;
        Ok(Self::diagonal(layout.clone(), |m| {
            C64::new(m[mode] as f64, 0.0)
        }))
    }

    /// Lifts a single-mode operator to act on `mode` of `layout`.
    pub fn embed(&self, mode: usize, layout: &ModeLayout) -> Result<Self> {
        layout.check_mode(mode)?;
        if self.layout.num_modes() != 1 || self.layout.dims()[0] != layout.dims()[mode] {
            return Err(Error::LayoutMismatch {
                left: self.layout.dims().to_vec(),
                right: vec![layout.dims()[mode]],
            });
        }
        let d = layout.total_dim();
        let local = layout.dims()[mode];
        let stride: usize = layout.dims()[mode + 1..].iter().product();
        let mut m = DMatrix::zeros(d, d);
        for col in 0..d {
            let k = (col / stride) % local;
            let base = col - k * stride;
            for j in 0..local {
                let v = self.matrix[(j, k)];
                if v != C64::new(0.0, 0.0) {
                    m[(base + j * stride, col)] = v;
                }
            }
        }
        Ok(Self {
            layout: layout.clone(),
            matrix: m,
        })
    }

    pub fn layout(&self) -> &ModeLayout {
        &self.layout
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<C64> {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn adjoint(&self) -> Self {
        Self {
            layout: self.layout.clone(),
            matrix: self.matrix.adjoint(),
        }
    }

    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check_layout(other)?;
        Ok(Self {
            layout: self.layout.clone(),
            matrix: &self.matrix * &other.matrix,
        })
    }

    /// `[self, other] = self*other - other*self`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.check_layout(other)?;
        Ok(Self {
            layout: self.layout.clone(),
            matrix: &self.matrix * &other.matrix - &other.matrix * &self.matrix,
        })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_layout(other)?;
        Ok(Self {
            layout: self.layout.clone(),
            matrix: &self.matrix + &other.matrix,
        })
    }

    pub fn scaled(&self, c: C64) -> Self {
        Self {
            layout: self.layout.clone(),
            matrix: &self.matrix * c,
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::identity(self.layout.clone());
        for _ in 0..k {
            out.matrix = &out.matrix * &self.matrix;
        }
        out
    }

    /// Largest entry of `|A - A^dagger|`.
    pub fn hermiticity_deviation(&self) -> f64 {
        let d = self.dim();
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in i..d {
                worst = worst.max((self.matrix[(i, j)] - self.matrix[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_deviation() <= tol
    }

    /// Largest entry of `|A^dagger A - I|`.
    pub fn unitarity_deviation(&self) -> f64 {
        let d = self.dim();
        let prod = self.matrix.adjoint() * &self.matrix;
        (prod - DMatrix::<C64>::identity(d, d))
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.matrix
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub(crate) fn check_layout(&self, other: &Self) -> Result<()> {
        if self.layout == other.layout {
            Ok(())
        } else {
            Err(Error::LayoutMismatch {
                left: self.layout.dims().to_vec(),
                right: other.layout.dims().to_vec(),
            })
        }
    }
}

/// Truncated displacement `exp(alpha a^dagger - alpha* a)` on one mode.
pub fn displacement(cutoff: usize, alpha: C64) -> Result<LinearOperator> {
    let a = LinearOperator::annihilation(cutoff)?;
    let gen = &a.adjoint().scaled(alpha) - &a.scaled(alpha.conj());
    // gen is anti-Hermitian, so i*gen is Hermitian and exp(gen) = exp(-i (i gen)).
    super::expm::expm(&gen.scaled(C64::i()), 1.0)
}

/// Truncated squeeze `exp((xi* a^2 - xi a^dagger^2) / 2)` on one mode.
pub fn squeeze(cutoff: usize, xi: C64) -> Result<LinearOperator> {
    let a = LinearOperator::annihilation(cutoff)?;
    let a2 = a.pow(2);
    let ad2 = a2.adjoint();
    let gen = (&a2.scaled(xi.conj()) - &ad2.scaled(xi)).scaled(C64::new(0.5, 0.0));
    super::expm::expm(&gen.scaled(C64::i()), 1.0)
}

impl<'a> Add for &'a LinearOperator {
    type Output = LinearOperator;
    /// Panics on layout mismatch; use [`LinearOperator::try_add`] for a fallible form.
    fn add(self, rhs: Self) -> LinearOperator {
        self.try_add(rhs).expect("operator layouts differ")
    }
}

impl<'a> Sub for &'a LinearOperator {
    type Output = LinearOperator;
    fn sub(self, rhs: Self) -> LinearOperator {
        self.check_layout(rhs).expect("operator layouts differ");
        LinearOperator {
            layout: self.layout.clone(),
            matrix: &self.matrix - &rhs.matrix,
        }
    }
}

impl<'a> Mul for &'a LinearOperator {
    type Output = LinearOperator;
    fn mul(self, rhs: Self) -> LinearOperator {
        self.compose(rhs).expect("operator layouts differ")
    }
}

impl<'a> Neg for &'a LinearOperator {
    type Output = LinearOperator;
    fn neg(self) -> LinearOperator {
        self.scaled(C64::new(-1.0, 0.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn annihilation_needs_two_levels() {
        assert!(matches!(
            LinearOperator::annihilation(0),
            Err(Error::CutoffTooSmall(_))
        ));
    }

    #[test]
    fn annihilation_matrix_elements() {
        let a = LinearOperator::annihilation(3).unwrap();
        assert_eq!(a.matrix()[(0, 1)], c(1.0));
        assert!((a.matrix()[(2, 3)] - c(3f64.sqrt())).norm() < 1e-15);
        assert_eq!(a.matrix()[(1, 0)], c(0.0));
    }

    #[test]
    fn commutator_rejects_layout_mismatch() {
        let a = LinearOperator::annihilation(2).unwrap();
        let b = LinearOperator::annihilation(3).unwrap();
        assert!(matches!(
            a.commutator(&b),
            Err(Error::LayoutMismatch { .. })
        ));
    }

    #[test]
    fn embedding_matches_kronecker_product() {
        let layout = ModeLayout::new(vec![2, 3, 2]).unwrap();
        let a = LinearOperator::annihilation(2).unwrap();
        let embedded = a.embed(1, &layout).unwrap();
        let i2 = DMatrix::<C64>::identity(2, 2);
        let oracle = i2.kronecker(&a.matrix().clone()).kronecker(&i2);
        assert_eq!(embedded.matrix(), &oracle);
    }

    #[test]
    fn number_operator_equals_creation_times_annihilation() {
        let layout = ModeLayout::new(vec![3, 4]).unwrap();
        for mode in 0..2 {
            let a = LinearOperator::mode_annihilation(&layout, mode).unwrap();
            let n = LinearOperator::mode_number(&layout, mode).unwrap();
            let diff = &(&a.adjoint() * &a) - &n;
            assert!(diff.matrix().iter().all(|z| z.norm() < 1e-14));
        }
    }

    #[test]
    fn displacement_of_vacuum_is_close_to_coherent_state() {
        let alpha = C64::new(0.3, -0.2);
        let d = displacement(30, alpha).unwrap();
        assert!(d.unitarity_deviation() < 1e-12);
        let col = d.matrix().column(0);
        let mut fact = 1.0;
        for n in 0..8 {
            if n > 0 {
                fact *= n as f64;
            }
            let expected = (-0.5 * alpha.norm_sqr()).exp() * alpha.powu(n as u32) / fact.sqrt();
            assert!((col[n] - expected).norm() < 1e-12, "level {n}");
        }
    }

    proptest! {
        #[test]
        fn truncated_commutator_has_defect_at_cutoff(cutoff in 1usize..12) {
            let a = LinearOperator::annihilation(cutoff).unwrap();
            let comm = a.commutator(&a.adjoint()).unwrap();
            for i in 0..=cutoff {
                for j in 0..=cutoff {
                    let expected = if i != j {
                        0.0
                    } else if i == cutoff {
                        -(cutoff as f64)
                    } else {
                        1.0
                    };
                    prop_assert!((comm.matrix()[(i, j)] - c(expected)).norm() < 1e-12);
                }
            }
        }
    }
}
