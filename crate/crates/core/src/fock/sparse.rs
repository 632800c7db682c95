use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use rayon::prelude::*;

/// Compressed sparse row matrix of complex entries.
#[derive(Debug, Clone, PartialEq)]
pub struct CsrMatrix {
    nrows: usize,
    ncols: usize,
    indptr: Vec<usize>,
    indices: Vec<usize>,
    values: Vec<C64>,
}

/// Rows per parallel chunk in [`CsrMatrix::matvec`]; small products stay serial.
const PAR_ROWS: usize = 4096;

impl CsrMatrix {
    /// Builds from `(row, col, value)` triplets, summing duplicates and
    /// dropping entries whose magnitude is not above `drop_tol`.
    pub fn from_triplets(
        nrows: usize,
        ncols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, C64)>,
        drop_tol: f64,
    ) -> Self {
        let mut map: BTreeMap<(usize, usize), C64> = BTreeMap::new();
        for (r, c, v) in triplets {
            assert!(r < nrows && c < ncols, "triplet ({r}, {c}) out of bounds");
            *map.entry((r, c)).or_insert(C64::new(0.0, 0.0)) += v;
        }
        let mut indptr = vec![0usize; nrows + 1];
        let mut indices = Vec::with_capacity(map.len());
        let mut values = Vec::with_capacity(map.len());
        for ((r, c), v) in map {
            if v.norm() > drop_tol {
                indptr[r + 1] += 1;
                indices.push(c);
                values.push(v);
            }
        }
        for r in 0..nrows {
            indptr[r + 1] += indptr[r];
        }
        Self {
            nrows,
            ncols,
            indptr,
            indices,
            values,
        }
    }

    pub fn from_dense(m: &DMatrix<C64>, drop_tol: f64) -> Self {
        let trip = (0..m.nrows())
            .flat_map(|r| (0..m.ncols()).map(move |c| (r, c)))
            .map(|(r, c)| (r, c, m[(r, c)]));
        Self::from_triplets(m.nrows(), m.ncols(), trip, drop_tol)
    }

    pub fn identity(n: usize) -> Self {
        Self {
            nrows: n,
            ncols: n,
            indptr: (0..=n).collect(),
            indices: (0..n).collect(),
            values: vec![C64::new(1.0, 0.0); n],
        }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, C64)> + '_ {
        (0..self.nrows).flat_map(move |r| {
            (self.indptr[r]..self.indptr[r + 1]).map(move |k| (r, self.indices[k], self.values[k]))
        })
    }

    pub fn to_dense(&self) -> DMatrix<C64> {
        let mut m = DMatrix::zeros(self.nrows, self.ncols);
        for (r, c, v) in self.triplets() {
            m[(r, c)] = v;
        }
        m
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &CsrMatrix) -> CsrMatrix {
        let trip = self.triplets().flat_map(|(r1, c1, v1)| {
            other
                .triplets()
                .map(move |(r2, c2, v2)| (r1 * other.nrows + r2, c1 * other.ncols + c2, v1 * v2))
        });
        CsrMatrix::from_triplets(
            self.nrows * other.nrows,
            self.ncols * other.ncols,
            trip.collect::<Vec<_>>(),
            0.0,
        )
    }

    /// `y = A x`.
    pub fn matvec(&self, x: &[C64], y: &mut [C64]) {
        assert_eq!(x.len(), self.ncols);
        assert_eq!(y.len(), self.nrows);
        let row = |r: usize| {
            let mut acc = C64::new(0.0, 0.0);
            for k in self.indptr[r]..self.indptr[r + 1] {
                acc += self.values[k] * x[self.indices[k]];
            }
            acc
        };
        if self.nrows >= PAR_ROWS {
            y.par_iter_mut().enumerate().for_each(|(r, yr)| *yr = row(r));
        } else {
            for (r, yr) in y.iter_mut().enumerate() {
                *yr = row(r);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicates_are_summed_and_zeros_dropped() {
        let m = CsrMatrix::from_triplets(
            2,
            2,
            vec![
                (0, 1, C64::new(1.0, 0.0)),
                (0, 1, C64::new(2.0, 0.0)),
                (1, 0, C64::new(0.0, 0.0)),
            ],
            0.0,
        );
        assert_eq!(m.nnz(), 1);
        assert_eq!(m.to_dense()[(0, 1)], C64::new(3.0, 0.0));
    }

    #[test]
    fn kron_and_matvec_match_dense() {
        let a = DMatrix::from_fn(2, 3, |i, j| C64::new(i as f64 + 1.0, j as f64));
        let b = DMatrix::from_fn(3, 2, |i, j| C64::new(j as f64 - i as f64, 0.5));
        let dense = a.kronecker(&b);
        let sparse = CsrMatrix::from_dense(&a, 0.0).kron(&CsrMatrix::from_dense(&b, 0.0));
        assert_eq!(sparse.to_dense(), dense);
        let x: Vec<C64> = (0..6).map(|k| C64::new(k as f64, -1.0)).collect();
        let mut y = vec![C64::new(0.0, 0.0); 6];
        sparse.matvec(&x, &mut y);
        let expected = &dense * nalgebra::DVector::from_vec(x);
        for (u, v) in y.iter().zip(expected.iter()) {
            assert!((u - v).norm() < 1e-12);
        }
    }
}
