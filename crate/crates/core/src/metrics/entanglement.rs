use crate::error::{Error, Result};
use crate::fock::{hermitian_eigenvalues, DensityMatrix, StateRef, StateVector};

/// Default level at or below which an entanglement value counts as zero.
pub const DEFAULT_ZERO_THRESHOLD: f64 = 1e-6;

/// `|<a|b>|^2`.
pub fn fidelity_pure(a: &StateVector, b: &StateVector) -> Result<f64> {
    Ok(a.inner(b)?.norm_sqr())
}

/// Fidelity of a pure reference to a pure or mixed state: `<a|rho|a>`.
pub fn fidelity<'a>(reference: &StateVector, state: impl Into<StateRef<'a>>) -> Result<f64> {
    match state.into() {
        StateRef::Pure(b) => fidelity_pure(reference, b),
        StateRef::Mixed(rho) => {
            rho.check_layout(reference.layout())?;
            let v = reference.amplitudes();
            Ok(v.dotc(&(rho.matrix() * v)).re)
        }
    }
}

fn check_bipartition(n_modes: usize, part_a: &[usize]) -> Result<()> {
    if n_modes < 2 {
        return Err(Error::param("state", "a bipartition needs at least two modes"));
    }
    if part_a.is_empty() || part_a.len() >= n_modes {
        return Err(Error::param(
            "part_a",
            "must be a nonempty proper subset of the modes",
        ));
    }
    Ok(())
}

/// Von Neumann entropy (base 2) of the reduced state on `part_a`.
pub fn entanglement_entropy(state: &StateVector, part_a: &[usize]) -> Result<f64> {
    check_bipartition(state.layout().num_modes(), part_a)?;
    let reduced = DensityMatrix::from_pure(state).partial_trace(part_a)?;
    Ok(von_neumann_entropy(&reduced))
}

/// `-Tr(rho log2 rho)`, ignoring eigenvalues below 1e-15.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    rho.eigenvalues()
        .into_iter()
        .filter(|&l| l > 1e-15)
        .map(|l| -l * l.log2())
        .sum()
}

/// `2 |c_{pp} c_{qq} - c_{pq} c_{qp}|` of a two-mode state restricted to the
/// levels `levels = [p, q]` of each mode.
pub fn bell_correlation(state: &StateVector, levels: [usize; 2]) -> Result<f64> {
    if state.layout().num_modes() != 2 {
        return Err(Error::param("state", "correlation needs a two-mode state"));
    }
    let [p, q] = levels;
    let c = |i, j| state.amplitude(&[i, j]);
    Ok(2.0 * (c(p, p)? * c(q, q)? - c(p, q)? * c(q, p)?).norm())
}

/// Negativity of a bipartite split, taken via the partial transpose on `mode`.
#[derive(Debug, Clone, PartialEq)]
pub struct NegativityReport {
    /// `max(0, -2 lambda_min)`.
    pub value: f64,
    /// `||rho^T||_1 - 1 = 2 sum |lambda_neg|`, the general form for larger subsystems.
    pub trace_norm: f64,
    pub min_eigenvalue: f64,
}

pub fn negativity(rho: &DensityMatrix, mode: usize) -> Result<NegativityReport> {
    let pt = rho.partial_transpose(mode)?;
    let ev = hermitian_eigenvalues(pt.matrix());
    let min_eigenvalue = ev.first().copied().unwrap_or(0.0);
    let neg_sum: f64 = ev.iter().filter(|&&l| l < 0.0).map(|l| -l).sum();
    Ok(NegativityReport {
        value: (-2.0 * min_eigenvalue).max(0.0),
        trace_norm: 2.0 * neg_sum,
        min_eigenvalue,
    })
}

/// Sampled entanglement measure over time.
#[derive(Debug, Clone, PartialEq)]
pub struct EntanglementTrace {
    pub times: Vec<f64>,
    pub values: Vec<f64>,
    pub threshold: f64,
}

impl EntanglementTrace {
    pub fn new(times: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        Self::with_threshold(times, values, DEFAULT_ZERO_THRESHOLD)
    }

    pub fn with_threshold(times: Vec<f64>, values: Vec<f64>, threshold: f64) -> Result<Self> {
        if times.len() != values.len() {
            return Err(Error::DimensionMismatch {
                expected: times.len(),
                got: values.len(),
            });
        }
        if times.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::param("times", "must be strictly increasing"));
        }
        if values.iter().any(|v| !(*v >= 0.0)) {
            return Err(Error::param("values", "must be finite and nonnegative"));
        }
        if !(threshold >= 0.0) {
            return Err(Error::param("threshold", "must be nonnegative"));
        }
        Ok(Self {
            times,
            values,
            threshold,
        })
    }
}

/// Maximal runs of samples at or below the threshold, as `(t_first, t_last)`.
pub fn death_revival_intervals(trace: &EntanglementTrace) -> Result<Vec<(f64, f64)>> {
    if trace.times.len() < 3 {
        return Err(Error::param("trace", "need at least 3 samples"));
    }
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    for (k, &v) in trace.values.iter().enumerate() {
        let dead = v <= trace.threshold;
        match (dead, start) {
            (true, None) => start = Some(k),
            (false, Some(s)) => {
                out.push((trace.times[s], trace.times[k - 1]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((trace.times[s], *trace.times.last().unwrap()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{tensor, LinearOperator, ModeLayout};
    use crate::states::{named_entangled, BellKind, NamedState};
    use crate::C64;
    use proptest::prelude::*;

    fn bell(kind: BellKind) -> StateVector {
        named_entangled(NamedState::Bell(kind), 1).unwrap()
    }

    fn product() -> StateVector {
        StateVector::basis(ModeLayout::uniform(2, 1).unwrap(), &[0, 1]).unwrap()
    }

    #[test]
    fn fidelity_cases() {
        let a = bell(BellKind::PhiPlus);
        assert!((fidelity_pure(&a, &a).unwrap() - 1.0).abs() < 1e-14);
        assert!(fidelity_pure(&a, &bell(BellKind::PhiMinus)).unwrap() < 1e-15);
        let f0 = crate::states::fock(0, 3).unwrap();
        let f1 = crate::states::fock(1, 3).unwrap();
        assert_eq!(fidelity_pure(&f0, &f1).unwrap(), 0.0);
        let rho = DensityMatrix::from_pure(&a);
        assert!((fidelity(&a, &rho).unwrap() - 1.0).abs() < 1e-14);
        assert!(fidelity(&f0, &rho).is_err());
    }

    #[test]
    fn entropy_and_correlation_of_bell_and_product_states() {
        for kind in [
            BellKind::PsiMinus,
            BellKind::PsiPlus,
            BellKind::PhiMinus,
            BellKind::PhiPlus,
        ] {
            let s = bell(kind);
            assert!((entanglement_entropy(&s, &[0]).unwrap() - 1.0).abs() < 1e-12);
            assert!((bell_correlation(&s, [0, 1]).unwrap() - 1.0).abs() < 1e-12);
        }
        let p = product();
        assert!(entanglement_entropy(&p, &[0]).unwrap().abs() < 1e-12);
        assert!(bell_correlation(&p, [0, 1]).unwrap().abs() < 1e-15);
        let sep = StateVector::superposition(
            ModeLayout::uniform(2, 1).unwrap(),
            &[
                (C64::new(1.0, 0.0), vec![0, 0]),
                (C64::new(1.0, 0.0), vec![0, 1]),
            ],
        )
        .unwrap();
        assert!(entanglement_entropy(&sep, &[0]).unwrap().abs() < 1e-12);
    }

    #[test]
    fn entropy_needs_a_bipartition() {
        let single = crate::states::fock(0, 2).unwrap();
        assert!(entanglement_entropy(&single, &[0]).is_err());
        assert!(entanglement_entropy(&product(), &[0, 1]).is_err());
    }

    #[test]
    fn negativity_of_reference_states() {
        let sep = DensityMatrix::from_pure(&product());
        assert!(negativity(&sep, 1).unwrap().value.abs() < 1e-12);
        let b = DensityMatrix::from_pure(&bell(BellKind::PsiMinus));
        let report = negativity(&b, 1).unwrap();
        assert!((report.value - 1.0).abs() < 1e-12);
        assert!((report.min_eigenvalue + 0.5).abs() < 1e-12);
    }

    #[test]
    fn qutrit_bell_negativity() {
        // The partial transpose of the B1 projector is SWAP/3: eigenvalues
        // +1/3 (six times) and -1/3 (three times).
        let b1 = DensityMatrix::from_pure(&named_entangled(NamedState::GenBell(1), 2).unwrap());
        let report = negativity(&b1, 1).unwrap();
        assert!((report.min_eigenvalue + 1.0 / 3.0).abs() < 1e-12);
        assert!((report.value - 2.0 / 3.0).abs() < 1e-12);
        assert!((report.trace_norm - 2.0).abs() < 1e-12);
    }

    #[test]
    fn w_state_leaves_remaining_pair_entangled() {
        let w = DensityMatrix::from_pure(&named_entangled(NamedState::W(3), 1).unwrap());
        let pair = w.partial_trace(&[0, 1]).unwrap();
        assert!(negativity(&pair, 1).unwrap().value > 0.1);
    }

    #[test]
    fn interval_detection() {
        let trace = EntanglementTrace::new(vec![0.0, 1.0, 2.0, 3.0], vec![1.0, 0.0, 0.0, 1.0]).unwrap();
        assert_eq!(death_revival_intervals(&trace).unwrap(), vec![(1.0, 2.0)]);
        let zeros = EntanglementTrace::new(vec![0.0, 1.0, 2.0], vec![0.0; 3]).unwrap();
        assert_eq!(death_revival_intervals(&zeros).unwrap(), vec![(0.0, 2.0)]);
        let positive = EntanglementTrace::new(vec![0.0, 1.0, 2.0], vec![0.5; 3]).unwrap();
        assert!(death_revival_intervals(&positive).unwrap().is_empty());
        let short = EntanglementTrace::new(vec![0.0, 1.0], vec![0.0; 2]).unwrap();
        assert!(death_revival_intervals(&short).is_err());
    }

    #[test]
    fn trace_validation() {
        assert!(EntanglementTrace::new(vec![0.0, 1.0], vec![0.0]).is_err());
        assert!(EntanglementTrace::new(vec![1.0, 0.0], vec![0.0, 0.0]).is_err());
        assert!(EntanglementTrace::new(vec![0.0, 1.0], vec![-1.0, 0.0]).is_err());
    }

    fn random_unitary(entries: &[f64]) -> LinearOperator {
        let m = nalgebra::DMatrix::from_fn(2, 2, |i, j| {
            C64::new(entries[2 * i + j], entries[4 + 2 * j + i])
        });
        let h = (&m + m.adjoint()) * C64::new(0.5, 0.0);
        crate::fock::expm(&LinearOperator::new(ModeLayout::single(1), h).unwrap(), 1.0).unwrap()
    }

    proptest! {
        #[test]
        fn two_qubit_negativity_equals_correlation(
            amps in prop::collection::vec(-1.0f64..1.0, 8),
        ) {
            let layout = ModeLayout::uniform(2, 1).unwrap();
            let v: Vec<C64> = (0..4).map(|k| C64::new(amps[2 * k], amps[2 * k + 1])).collect();
            prop_assume!(v.iter().map(|z| z.norm_sqr()).sum::<f64>() > 1e-3);
            let s = StateVector::from_vec(layout, v).unwrap().normalized().unwrap();
            let n = negativity(&DensityMatrix::from_pure(&s), 1).unwrap().value;
            let c = bell_correlation(&s, [0, 1]).unwrap();
            prop_assert!((n - c).abs() < 1e-10);
        }

        #[test]
        fn entropy_invariant_under_local_unitaries(
            amps in prop::collection::vec(-1.0f64..1.0, 8),
            ua in prop::collection::vec(-2.0f64..2.0, 8),
            ub in prop::collection::vec(-2.0f64..2.0, 8),
        ) {
            let layout = ModeLayout::uniform(2, 1).unwrap();
            let v: Vec<C64> = (0..4).map(|k| C64::new(amps[2 * k], amps[2 * k + 1])).collect();
            prop_assume!(v.iter().map(|z| z.norm_sqr()).sum::<f64>() > 1e-3);
            let s = StateVector::from_vec(layout, v).unwrap().normalized().unwrap();
            let local = tensor(&[random_unitary(&ua), random_unitary(&ub)]).unwrap();
            let rotated = s.apply(&local).unwrap();
            let e0 = entanglement_entropy(&s, &[0]).unwrap();
            let e1 = entanglement_entropy(&rotated, &[0]).unwrap();
            prop_assert!((e0 - e1).abs() < 1e-9);
        }
    }
}
