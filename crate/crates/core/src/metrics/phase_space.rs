use std::io::Write;

use num_complex::Complex64 as C64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fock::{DensityMatrix, StateRef};
use crate::states::coherent_series;

/// Rectangular grid on the complex `alpha` plane. Sample points are the
/// centres of `resolution x resolution` equal cells.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseGrid {
    pub re_range: (f64, f64),
    pub im_range: (f64, f64),
    pub resolution: usize,
}

impl PhaseGrid {
    pub fn new(re_range: (f64, f64), im_range: (f64, f64), resolution: usize) -> Result<Self> {
        if resolution < 2 {
            return Err(Error::param("resolution", "need at least 2 points per axis"));
        }
        for (name, (lo, hi)) in [("re_range", re_range), ("im_range", im_range)] {
            if !lo.is_finite() || !hi.is_finite() || !(hi > lo) {
                return Err(Error::param(name, format!("invalid interval [{lo}, {hi}]")));
            }
        }
        Ok(Self {
            re_range,
            im_range,
            resolution,
        })
    }

    /// Square grid `[-half_width, half_width]^2`.
    pub fn square(half_width: f64, resolution: usize) -> Result<Self> {
        Self::new((-half_width, half_width), (-half_width, half_width), resolution)
    }

    pub fn cell_area(&self) -> f64 {
        let n = self.resolution as f64;
        (self.re_range.1 - self.re_range.0) / n * (self.im_range.1 - self.im_range.0) / n
    }

    /// Point at `(i_re, i_im)`.
    pub fn point(&self, i_re: usize, i_im: usize) -> C64 {
        let n = self.resolution as f64;
        let dre = (self.re_range.1 - self.re_range.0) / n;
        let dim = (self.im_range.1 - self.im_range.0) / n;
        C64::new(
            self.re_range.0 + (i_re as f64 + 0.5) * dre,
            self.im_range.0 + (i_im as f64 + 0.5) * dim,
        )
    }

    /// All points, real part varying slowest.
    pub fn points(&self) -> Vec<C64> {
        let n = self.resolution;
        (0..n * n).map(|k| self.point(k / n, k % n)).collect()
    }
}

/// Husimi function sampled on a [`PhaseGrid`].
#[derive(Debug, Clone, PartialEq)]
pub struct HusimiField {
    pub grid: PhaseGrid,
    /// Values in the order of [`PhaseGrid::points`].
    pub values: Vec<f64>,
}

impl HusimiField {
    /// Midpoint-rule integral over the grid.
    pub fn integral(&self) -> f64 {
        self.values.iter().sum::<f64>() * self.grid.cell_area()
    }

    /// Grid point with the largest value.
    pub fn argmax(&self) -> (C64, f64) {
        let (k, &q) = self
            .values
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .expect("grid has at least 4 points");
        let n = self.grid.resolution;
        (self.grid.point(k / n, k % n), q)
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// CSV with header `re,im,q`.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "re,im,q")?;
        for (z, q) in self.grid.points().iter().zip(&self.values) {
            writeln!(out, "{},{},{}", z.re, z.im, q)?;
        }
        Ok(())
    }
}

/// `Q(alpha) = <alpha|rho|alpha> / pi` for a single-mode state. The probe is
/// the coherent state clipped at the state's cutoff, without renormalization.
pub fn husimi_q<'a>(state: impl Into<StateRef<'a>>, grid: &PhaseGrid) -> Result<HusimiField> {
    let state = state.into();
    let layout = state.layout();
    if layout.num_modes() != 1 {
        return Err(Error::param(
            "state",
            format!(
                "Husimi Q needs a single-mode state, got {} modes; trace out the rest first",
                layout.num_modes()
            ),
        ));
    }
    let cutoff = layout.dims()[0] - 1;
    let values = match state {
        StateRef::Pure(psi) => {
            let amps = psi.amplitudes();
            grid.points()
                .par_iter()
                .map(|&alpha| {
                    let probe = coherent_series(alpha, cutoff);
                    let overlap: C64 = probe.iter().zip(amps.iter()).map(|(p, a)| p.conj() * a).sum();
                    overlap.norm_sqr() / std::f64::consts::PI
                })
                .collect()
        }
        StateRef::Mixed(rho) => grid
            .points()
            .par_iter()
            .map(|&alpha| mixed_q(rho, &coherent_series(alpha, cutoff)))
            .collect(),
    };
    Ok(HusimiField {
        grid: *grid,
        values,
    })
}

fn mixed_q(rho: &DensityMatrix, probe: &[C64]) -> f64 {
    let m = rho.matrix();
    let d = probe.len();
    let mut acc = C64::new(0.0, 0.0);
    for i in 0..d {
        let mut row = C64::new(0.0, 0.0);
        for j in 0..d {
            row += m[(i, j)] * probe[j];
        }
        acc += probe[i].conj() * row;
    }
    acc.re / std::f64::consts::PI
}
