use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use qscissors::fock::{expm, CsrMatrix, Spectral};
use qscissors::lqs::{bs_unitary, conditional_project, DetectionPattern};
use qscissors::metrics::{husimi_q, PhaseGrid};
use qscissors::nqs::{closed_rhs, liouvillian};
use qscissors::states::fock;
use qscissors::C64;
use qscissors_bench::{coupler_damping, coupler_hamiltonian, scissors};

fn propagators(c: &mut Criterion) {
    let mut g = c.benchmark_group("propagator");
    for cutoff in [2, 4, 6] {
        let h = coupler_hamiltonian(cutoff);
        g.bench_with_input(BenchmarkId::new("expm", cutoff), &h, |b, h| b.iter(|| expm(h, black_box(10.0)).unwrap()));
        let spec = Spectral::new(h.matrix());
        let psi = h.matrix().column(0).into_owned();
        g.bench_with_input(BenchmarkId::new("spectral_evolve", cutoff), &psi, |b, psi| {
            b.iter(|| spec.evolve(psi, black_box(10.0)))
        });
    }
    g.finish();
}

fn right_hand_sides(c: &mut Criterion) {
    let mut g = c.benchmark_group("rhs");
    let h = coupler_hamiltonian(4);
    let collapse: Vec<_> = coupler_damping()
        .iter()
        .flat_map(|d| d.collapse_operators(h.layout()).unwrap())
        .collect();
    let l = liouvillian(&h, &collapse).unwrap();
    let rho = vec![C64::new(1.0 / 625.0, 0.0); l.nrows()];
    let mut out = vec![C64::new(0.0, 0.0); l.nrows()];
    g.bench_function("lindblad_25", |b| b.iter(|| l.matvec(black_box(&rho), &mut out)));
    let sparse = CsrMatrix::from_dense(h.matrix(), 0.0);
    let psi = vec![C64::new(0.2, 0.0); h.dim()];
    let mut dpsi = vec![C64::new(0.0, 0.0); h.dim()];
    g.bench_function("schrodinger_25", |b| b.iter(|| closed_rhs(&sparse, black_box(&psi), &mut dpsi)));
    g.finish();
}

fn husimi(c: &mut Criterion) {
    let state = fock(4, 40).unwrap();
    let mut g = c.benchmark_group("husimi");
    for res in [61, 121] {
        let grid = PhaseGrid::square(6.0, res).unwrap();
        g.bench_with_input(BenchmarkId::new("fock4_cutoff40", res), &grid, |b, grid| {
            b.iter(|| husimi_q(&state, grid).unwrap())
        });
    }
    g.finish();
}

fn conditional(c: &mut Criterion) {
    let mut g = c.benchmark_group("conditional_project");
    for cutoff in [6, 8] {
        let (cfg, input) = scissors(cutoff);
        let layout = input.layout();
        let u1 = bs_unitary(&cfg.bs1.on((0, 1)).unwrap(), layout).unwrap();
        let u2 = bs_unitary(&cfg.bs2.on((2, 1)).unwrap(), layout).unwrap();
        let net = &u2 * &u1;
        let pattern = DetectionPattern::new(&[(1, 1), (2, 0)]).unwrap();
        g.bench_with_input(BenchmarkId::new("three_mode", cutoff), &input, |b, input| {
            b.iter(|| conditional_project(input, &net, &pattern, &[]).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, propagators, right_hand_sides, husimi, conditional);
criterion_main!(benches);
