use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64 as C64;

use super::operator::LinearOperator;
use crate::error::{Error, Result};

/// Tolerance, relative to the largest entry, below which a generator is
/// treated as Hermitian and exponentiated through its eigendecomposition.
const HERMITIAN_TOL: f64 = 1e-12;

/// `exp(-i H t)`. Hermitian `H` goes through an eigendecomposition; anything
/// else through Pade(13) scaling and squaring.
pub fn expm(h: &LinearOperator, t: f64) -> Result<LinearOperator> {
    if !h.is_finite() || !t.is_finite() {
        return Err(Error::NonFinite("matrix exponential input"));
    }
    let scale = h.matrix().iter().map(|z| z.norm()).fold(1.0, f64::max);
    let m = if h.hermiticity_deviation() <= HERMITIAN_TOL * scale {
        Spectral::new(h.matrix()).propagator(t)
    } else {
        expm_pade(&(h.matrix() * C64::new(0.0, -t)))?
    };
    LinearOperator::new(h.layout().clone(), m)
}

/// Eigendecomposition of a Hermitian generator, reused across many times.
#[derive(Debug, Clone)]
pub struct Spectral {
    values: DVector<f64>,
    vectors: DMatrix<C64>,
}

impl Spectral {
    pub fn new(h: &DMatrix<C64>) -> Self {
        let herm = (h + h.adjoint()) * C64::new(0.5, 0.0);
        let eig = SymmetricEigen::new(herm);
        Self {
            values: eig.eigenvalues,
            vectors: eig.eigenvectors,
        }
    }

    pub fn eigenvalues(&self) -> &DVector<f64> {
        &self.values
    }

    /// `exp(-i H t)` as a dense matrix.
    pub fn propagator(&self, t: f64) -> DMatrix<C64> {
        let mut scaled = self.vectors.clone();
        for (k, mut col) in scaled.column_iter_mut().enumerate() {
            col *= C64::from_polar(1.0, -self.values[k] * t);
        }
        scaled * self.vectors.adjoint()
    }

    /// `exp(-i H t) psi` without forming the propagator.
    pub fn evolve(&self, psi: &DVector<C64>, t: f64) -> DVector<C64> {
        let mut coeffs = self.vectors.ad_mul(psi);
        for (k, c) in coeffs.iter_mut().enumerate() {
            *c *= C64::from_polar(1.0, -self.values[k] * t);
        }
        &self.vectors * coeffs
    }
}

const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];
const THETA13: f64 = 5.371920351148152;

/// `exp(a)` for a general square matrix via Pade(13) scaling and squaring.
pub fn expm_pade(a: &DMatrix<C64>) -> Result<DMatrix<C64>> {
    if a.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::NonFinite("matrix exponential input"));
    }
    let n = a.nrows();
    let norm1 = (0..n)
        .map(|j| a.column(j).iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max);
    let s = if norm1 > THETA13 {
        (norm1 / THETA13).log2().ceil() as i32
    } else {
        0
    };
    let a = a * C64::new(0.5f64.powi(s), 0.0);
    let id = DMatrix::<C64>::identity(n, n);
    let b = |k: usize| C64::new(PADE13[k], 0.0);
    let a2 = &a * &a;
    let a4 = &a2 * &a2;
    let a6 = &a4 * &a2;
    let u_inner = &a6 * (&a6 * b(13) + &a4 * b(11) + &a2 * b(9))
        + &a6 * b(7)
        + &a4 * b(5)
        + &a2 * b(3)
        + &id * b(1);
    let u = &a * u_inner;
    let v = &a6 * (&a6 * b(12) + &a4 * b(10) + &a2 * b(8))
        + &a6 * b(6)
        + &a4 * b(4)
        + &a2 * b(2)
        + &id * b(0);
    let p = &v + &u;
    let q = &v - &u;
    let mut r = q
        .lu()
        .solve(&p)
        .ok_or_else(|| Error::NonFinite("Pade denominator is singular"))?;
    for _ in 0..s {
        r = &r * &r;
    }
    Ok(r)
}
