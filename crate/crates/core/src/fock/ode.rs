use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Adaptive Dormand-Prince 5(4) integrator for complex linear systems.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dopri5 {
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
    pub max_step: f64,
}

impl Default for Dopri5 {
    fn default() -> Self {
        Self {
            rtol: 1e-10,
            atol: 1e-12,
            max_steps: 50_000_000,
            max_step: f64::INFINITY,
        }
    }
}

const C: [f64; 7] = [0.0, 0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [0.2, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

impl Dopri5 {
    pub fn with_tolerances(rtol: f64, atol: f64) -> Self {
        Self {
            rtol,
            atol,
            ..Self::default()
        }
    }

    /// Integrates `dy/dt = f(t, y)` from `times[0]` (where `y = y0`) and
    /// returns the solution at every entry of `times`, which must be
    /// non-decreasing.
    pub fn integrate<F>(&self, mut f: F, y0: &[C64], times: &[f64]) -> Result<Vec<Vec<C64>>>
    where
        F: FnMut(f64, &[C64], &mut [C64]),
    {
        if times.is_empty() {
            return Err(Error::EmptyInput("output times"));
        }
        if times.windows(2).any(|w| !(w[1] >= w[0])) {
            return Err(Error::param("times", "must be finite and non-decreasing"));
        }
        let n = y0.len();
        let mut y = y0.to_vec();
        let mut t = times[0];
        let mut out = Vec::with_capacity(times.len());
        out.push(y.clone());

        let mut k: Vec<Vec<C64>> = vec![vec![C64::new(0.0, 0.0); n]; 7];
        let mut stage = vec![C64::new(0.0, 0.0); n];
        let mut y_new = vec![C64::new(0.0, 0.0); n];
        f(t, &y, &mut k[0]);
        let mut h = self.initial_step(&y, &k[0], times);
        let mut steps = 0usize;

        for &t_out in &times[1..] {
            while t < t_out {
                steps += 1;
                if steps > self.max_steps {
                    return Err(Error::Integrator(format!(
                        "exceeded {} steps at t = {t}",
                        self.max_steps
                    )));
                }
                let remaining = t_out - t;
                let last = h >= remaining;
                let h_try = if last { remaining } else { h };

                for s in 1..7 {
                    for i in 0..n {
                        let mut acc = C64::new(0.0, 0.0);
                        for (j, kj) in k.iter().enumerate().take(s) {
                            let a = A[s][j];
                            if a != 0.0 {
                                acc += kj[i] * a;
                            }
                        }
                        stage[i] = y[i] + acc * h_try;
                    }
                    f(t + C[s] * h_try, &stage, &mut k[s]);
                    if s == 6 {
                        y_new.copy_from_slice(&stage);
                    }
                }

                let mut err_sq = 0.0;
                for i in 0..n {
                    let mut e = C64::new(0.0, 0.0);
                    for (s, ks) in k.iter().enumerate() {
                        if E[s] != 0.0 {
                            e += ks[i] * E[s];
                        }
                    }
                    let sc = self.atol + self.rtol * y[i].norm().max(y_new[i].norm());
                    err_sq += (e.norm() * h_try / sc).powi(2);
                }
                let err = (err_sq / n.max(1) as f64).sqrt();
                if !err.is_finite() {
                    return Err(Error::Integrator(format!("non-finite error estimate at t = {t}")));
                }

                if err <= 1.0 {
                    t = if last { t_out } else { t + h_try };
                    std::mem::swap(&mut y, &mut y_new);
                    let (first, rest) = k.split_at_mut(1);
                    first[0].copy_from_slice(&rest[5]);
                    let factor = if err == 0.0 {
                        5.0
                    } else {
                        (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
                    };
                    if !last || factor < 1.0 {
                        h = (h_try * factor).min(self.max_step);
                    }
                } else {
                    h = h_try * (0.9 * err.powf(-0.2)).clamp(0.1, 1.0);
                    if h < 1e-14 * t.abs().max(1.0) {
                        return Err(Error::Integrator(format!("step size underflow at t = {t}")));
                    }
                }
            }
            out.push(y.clone());
        }
        Ok(out)
    }

    fn initial_step(&self, y: &[C64], dy: &[C64], times: &[f64]) -> f64 {
        let span = times.last().copied().unwrap_or(0.0) - times[0];
        let scale = |v: &[C64]| {
            let s: f64 = v
                .iter()
                .zip(y)
                .map(|(z, yi)| (z.norm() / (self.atol + self.rtol * yi.norm())).powi(2))
                .sum();
            (s / v.len().max(1) as f64).sqrt()
        };
        let d0 = scale(y);
        let d1 = scale(dy);
        let h = if d0 < 1e-5 || d1 < 1e-5 {
            1e-6
        } else {
            0.01 * d0 / d1
        };
        h.min(self.max_step).min(span.max(1e-12))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_phase_rotation() {
        let solver = Dopri5::default();
        let omega = 1.3;
        let times: Vec<f64> = (0..=20).map(|k| k as f64 * 0.5).collect();
        let sol = solver
            .integrate(
                |_, y, dy| dy[0] = C64::new(0.0, -omega) * y[0],
                &[C64::new(1.0, 0.0)],
                &times,
            )
            .unwrap();
        for (t, y) in times.iter().zip(&sol) {
            let exact = C64::from_polar(1.0, -omega * t);
            assert!((y[0] - exact).norm() < 1e-9, "t = {t}");
        }
    }

    #[test]
    fn decaying_two_level_system() {
        let solver = Dopri5::default();
        let times = [0.0, 1.0, 4.0];
        let sol = solver
            .integrate(
                |_, y, dy| {
                    dy[0] = -y[0] * 0.5;
                    dy[1] = y[0] * 0.5;
                },
                &[C64::new(1.0, 0.0), C64::new(0.0, 0.0)],
                &times,
            )
            .unwrap();
        assert!((sol[2][0].re - (-2.0f64).exp()).abs() < 1e-10);
        assert!((sol[2][0].re + sol[2][1].re - 1.0).abs() < 1e-10);
    }

    #[test]
    fn rejects_decreasing_times() {
        let solver = Dopri5::default();
        let r = solver.integrate(|_, _, _| {}, &[C64::new(1.0, 0.0)], &[1.0, 0.0]);
        assert!(r.is_err());
    }
}
