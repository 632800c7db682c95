//! Registered experiments. Each preset declares its parameters and turns a
//! validated parameter set into a [`ResultTable`].

use std::f64::consts::PI;

use qscissors::fock::ModeLayout;
use qscissors::lqs::{
    dakna_sequence, hole_burned_targets, kkgj, kkgj_exact_transmittance, mz_closed_form, mz_truncate,
    optimize_multiport, ppb, villas_boas_truncate, ConditionalOutcome, DetectorModel, MultiportConfig,
    SplitterParams,
};
use qscissors::metrics::{fidelity, husimi_q, negativity, PhaseGrid};
use qscissors::nqs::{
    build_hamiltonian, evolve_closed, kicked_kerr_evolve, kilin_property, linear_coupler_targets,
    nonlinear_coupler_targets, parametric_targets, population_outside_levels, qubit_subspace_negativity,
    sanders_noon, uniform_times, w_state_evolution, Backend, BellTarget, DampedCoupler, KerrCouplerSpec,
    KickedKerrSpec, KilinForm, NegativityMeasure, SandersParams,
};
use qscissors::states::{coherent_amplitudes, fock, squeezed_amplitudes, tcs, CoherentSpec, SqueezeSpec};
use qscissors::{DensityMatrix, StateRef, StateVector, C64};

use crate::config::{param, Kind, ParamSpec, Params};
use crate::error::{CliError, CliResult};
use crate::table::ResultTable;

pub struct Preset {
    pub name: &'static str,
    pub about: &'static str,
    pub params: &'static [ParamSpec],
    pub run: fn(&Params) -> CliResult<ResultTable>,
}

const DETECTOR: [ParamSpec; 3] = [
    param("detector", Kind::Choice(&["pnr", "on_off"]), "pnr", "photon-number resolving or on/off"),
    param("efficiency", Kind::NonNeg, "1", "detector efficiency in (0, 1]"),
    param("dark", Kind::NonNeg, "0", "dark counts per detection window"),
];

fn detector(p: &Params) -> CliResult<DetectorModel> {
    let (eta, dark) = (p.real("efficiency"), p.real("dark"));
    Ok(match p.text("detector") {
        "on_off" => DetectorModel::on_off(eta, dark)?,
        _ if eta == 1.0 && dark == 0.0 => DetectorModel::ideal(),
        _ => DetectorModel::pnr_lossy(eta, dark)?,
    })
}

fn splitter(p: &Params, t: &str, phi: &str) -> SplitterParams {
    SplitterParams::new(p.real(t), p.real(phi))
}

/// Amplitudes and populations of a heralded single-mode output, with the
/// success probability and fidelity to `target` in the metadata.
fn heralded_table(out: &ConditionalOutcome, target: Option<&StateVector>) -> CliResult<ResultTable> {
    let mut t = ResultTable::new(["n", "re", "im", "population"]);
    let pops = out.state.populations();
    for (n, &pop) in pops.iter().enumerate() {
        let amp = out.pure.as_ref().map(|s| s.amplitudes()[n]).unwrap_or_default();
        t.push(vec![n as f64, amp.re, amp.im, pop])?;
    }
    t.meta("success_probability", out.probability);
    t.meta("pure", out.pure.is_some());
    if let Some(target) = target {
        let padded = pad(target, out.state.layout().cutoff(0)?)?;
        t.meta("target_fidelity", fidelity(&padded, &out.state)?);
    }
    Ok(t)
}

fn pad(s: &StateVector, cutoff: usize) -> CliResult<StateVector> {
    let mut v = vec![C64::new(0.0, 0.0); cutoff + 1];
    for (k, a) in s.amplitudes().iter().enumerate().take(cutoff + 1) {
        v[k] = *a;
    }
    Ok(StateVector::from_vec(ModeLayout::single(cutoff), v)?)
}

const PPB: &[ParamSpec] = &[
    param("alpha", Kind::Complex, "(0.5,0)", "input coherent amplitude"),
    param("t1", Kind::NonNeg, "0.5", "transmittance of the first splitter"),
    param("phi1", Kind::Real, "0", "reflection phase of the first splitter"),
    param("t2", Kind::NonNeg, "0.5", "transmittance of the second splitter"),
    param("phi2", Kind::Real, "0", "reflection phase of the second splitter"),
    param("cutoff", Kind::Int, "12", "Fock cutoff per mode"),
    DETECTOR[0],
    DETECTOR[1],
    DETECTOR[2],
];

fn run_ppb(p: &Params) -> CliResult<ResultTable> {
    let alpha = p.complex("alpha");
    let out = ppb(alpha, splitter(p, "t1", "phi1"), splitter(p, "t2", "phi2"), detector(p)?, p.int("cutoff"))?;
    heralded_table(&out, Some(&tcs(alpha, 1)?))
}

const VILLAS_BOAS: &[ParamSpec] = &[
    param("n", Kind::Int, "2", "highest retained level"),
    PPB[0],
    PPB[1],
    PPB[2],
    PPB[3],
    PPB[4],
    PPB[5],
    DETECTOR[0],
    DETECTOR[1],
    DETECTOR[2],
];

fn run_villas_boas(p: &Params) -> CliResult<ResultTable> {
    let (n, alpha) = (p.int("n"), p.complex("alpha"));
    let out = villas_boas_truncate(
        n,
        alpha,
        splitter(p, "t1", "phi1"),
        splitter(p, "t2", "phi2"),
        detector(p)?,
        p.int("cutoff"),
    )?;
    heralded_table(&out, Some(&tcs(alpha, n)?))
}

const KKGJ: &[ParamSpec] = &[
    PPB[0],
    param("transmittance", Kind::Real, "-1", "common transmittance; negative selects the exact value"),
    PPB[5],
    DETECTOR[0],
    DETECTOR[1],
    DETECTOR[2],
];

fn run_kkgj(p: &Params) -> CliResult<ResultTable> {
    let alpha = p.complex("alpha");
    let t = match p.real("transmittance") {
        x if x < 0.0 => kkgj_exact_transmittance(),
        x => x,
    };
    let out = kkgj(alpha, t, detector(p)?, p.int("cutoff"))?;
    let mut table = heralded_table(&out, Some(&tcs(alpha, 2)?))?;
    table.meta("transmittance", t);
    Ok(table)
}

const DAKNA: &[ParamSpec] = &[
    param("alphas", Kind::ComplexList, "(0.5,0);(-0.5,0)", "displacements D(a_1);...;D(a_N+1)"),
    param("transmittance", Kind::NonNeg, "1", "splitter transmittance per step"),
    param("cutoff", Kind::Int, "20", "Fock cutoff"),
];

fn run_dakna(p: &Params) -> CliResult<ResultTable> {
    let psi = dakna_sequence(p.complex_list("alphas"), p.real("transmittance"), p.int("cutoff"))?;
    let mut t = ResultTable::new(["n", "re", "im", "population"]);
    for (n, a) in psi.amplitudes().iter().enumerate() {
        t.push(vec![n as f64, a.re, a.im, a.norm_sqr()])?;
    }
    t.meta("top_population", psi.top_population(0)?);
    Ok(t)
}

const MZ: &[ParamSpec] = &[
    param("gamma", Kind::Complex, "(0.7,0)", "input coherent amplitude"),
    param("grid", Kind::Int, "10", "phase samples per axis over [0, 2 pi]"),
    param("cutoff", Kind::Int, "14", "Fock cutoff per mode"),
];

fn run_mz(p: &Params) -> CliResult<ResultTable> {
    let (gamma, n) = (p.complex("gamma"), p.int("grid"));
    if n < 2 {
        return Err(CliError::config("parameter `grid` must be >= 2"));
    }
    let mut t = ResultTable::new(["theta1", "theta2", "probability", "c0_re", "c0_im", "c1_re", "c1_im", "closed_form_error"]);
    for i in 0..n {
        for j in 0..n {
            let th1 = 2.0 * PI * i as f64 / (n - 1) as f64;
            let th2 = 2.0 * PI * j as f64 / (n - 1) as f64;
            let out = mz_truncate(th1, th2, gamma, p.int("cutoff"))?;
            let closed = mz_closed_form(th1, th2, gamma);
            let norm = (closed[0].norm_sqr() + closed[1].norm_sqr()).sqrt();
            let a = out.pure.as_ref().map(|s| [s.amplitudes()[0], s.amplitudes()[1]]).unwrap_or_default();
            let err = (a[0] - closed[0] / norm).norm().max((a[1] - closed[1] / norm).norm());
            t.push(vec![th1, th2, out.probability, a[0].re, a[0].im, a[1].re, a[1].im, err])?;
        }
    }
    Ok(t)
}

const MULTIPORT: &[ParamSpec] = &[
    param("alpha", Kind::Complex, "(1,0)", "input coherent amplitude"),
    param("dim", Kind::Int, "4", "target dimension"),
    param("holes", Kind::IntList, "1", "levels removed from the target, ';'-separated"),
    param("max_evals", Kind::Int, "300", "optimizer evaluation budget"),
];

fn run_multiport(p: &Params) -> CliResult<ResultTable> {
    let alpha = p.complex("alpha");
    let target = hole_burned_targets(p.int("dim"), p.int_list("holes"), alpha)?;
    let fit = optimize_multiport(MultiportConfig::four_level(alpha), &target, p.int("max_evals"))?;
    let out = fit.config.run()?;
    let pops = out.state.populations();
    let mut t = ResultTable::new(["n", "target_population", "output_population"]);
    for n in 0..target.dim() {
        t.push(vec![n as f64, target.amplitudes()[n].norm_sqr(), pops[n]])?;
    }
    t.meta("fidelity", fit.fidelity);
    t.meta("success_probability", fit.probability);
    t.meta("evaluations", fit.evaluations);
    for (k, s) in fit.config.splitters.iter().enumerate() {
        t.meta(&format!("splitter{k}"), format!("T={} phi={}", s.transmittance, s.phase));
    }
    Ok(t)
}

const KICKED: &[ParamSpec] = &[
    param("chi_t", Kind::NonNeg, "1", "Kerr phase per period, chi T"),
    param("epsilon", Kind::Complex, "(0.01,0)", "kick strength"),
    param("z", Kind::Int, "1", "photons per kick"),
    param("n_kicks", Kind::Int, "400", "number of periods"),
    param("cutoff", Kind::Int, "8", "Fock cutoff"),
];

fn run_kicked(p: &Params) -> CliResult<ResultTable> {
    let spec = KickedKerrSpec {
        chi: p.real("chi_t"),
        period: 1.0,
        epsilon: p.complex("epsilon"),
        n_kicks: p.int("n_kicks"),
        z: p.int("z"),
        cutoff: p.int("cutoff"),
    };
    let psi0 = StateVector::vacuum(ModeLayout::single(spec.cutoff));
    let trace = kicked_kerr_evolve(&spec, &psi0)?;
    let leak = population_outside_levels(&trace, &[0, spec.z])?;
    let mut cols = vec!["kick".to_string()];
    cols.extend((0..=spec.cutoff).map(|n| format!("p{n}")));
    cols.push("leakage".into());
    let mut t = ResultTable::new(cols);
    for (k, (s, l)) in trace.states.iter().zip(leak).enumerate() {
        let mut row = vec![k as f64];
        row.extend(s.probabilities());
        row.push(l);
        t.push(row)?;
    }
    Ok(t)
}

const KILIN: &[ParamSpec] = &[
    param("n_max", Kind::Int, "5", "largest target Fock state"),
    param("form", Kind::Choice(&["power_n", "printed"]), "power_n", "annihilation power in the generator"),
];

fn run_kilin(p: &Params) -> CliResult<ResultTable> {
    let form = match p.text("form") {
        "printed" => KilinForm::Printed,
        _ => KilinForm::PowerN,
    };
    let mut t = ResultTable::new(["n", "fidelity", "passed"]);
    for n in 1..=p.int("n_max") {
        let check = kilin_property(n, n + 1, form)?;
        t.push(vec![n as f64, check.fidelity, f64::from(u8::from(check.passed))])?;
    }
    Ok(t)
}

/// Shared parameters of the two-mode coupler presets.
const EVOLUTION: [ParamSpec; 8] = [
    param("chi", Kind::NonNeg, "1", "Kerr constant (sets the time unit)"),
    param("t_max", Kind::NonNeg, "200", "final dimensionless time chi t"),
    param("points", Kind::Int, "2001", "number of time samples"),
    param("backend", Kind::Choice(&["expm", "ode"]), "expm", "closed-system propagator"),
    param("gamma_over_chi", Kind::NonNeg, "0", "damping rate on both modes"),
    param("nbar_a", Kind::NonNeg, "0", "thermal occupation of bath a"),
    param("nbar_b", Kind::NonNeg, "0", "thermal occupation of bath b"),
    param("max_top_population", Kind::NonNeg, "0.05", "physics guard on the highest Fock level"),
];

struct CouplerRun<'a> {
    spec: KerrCouplerSpec,
    psi0: StateVector,
    targets: Vec<BellTarget>,
    keep: &'a [Vec<usize>],
    measure: NegativityMeasure,
}

fn population_outside(rho: StateRef<'_>, keep: &[Vec<usize>]) -> CliResult<f64> {
    Ok(match rho {
        StateRef::Pure(s) => s.population_outside(keep)?,
        StateRef::Mixed(r) => {
            let pops = r.populations();
            let kept: f64 = keep
                .iter()
                .map(|o| r.layout().index_of(o).map(|k| pops[k]))
                .sum::<qscissors::Result<f64>>()?;
            (1.0 - kept).max(0.0)
        }
    })
}

fn run_coupler(p: &Params, run: CouplerRun<'_>) -> CliResult<ResultTable> {
    let n = p.int("points");
    if n < 2 {
        return Err(CliError::config("parameter `points` must be >= 2"));
    }
    let times = uniform_times(p.real("t_max") / p.real("chi"), n);
    let chi = p.real("chi");
    let gamma = p.real("gamma_over_chi") * chi;
    let mut cols = vec!["tau".to_string(), "leakage".into(), "negativity".into()];
    cols.extend(run.targets.iter().map(|t| format!("fidelity_{}", t.label)));
    let mut table = ResultTable::new(cols);

    let mut push = |t: f64, rho: StateRef<'_>, dm: &DensityMatrix| -> CliResult<()> {
        let neg = match run.measure {
            NegativityMeasure::Full => negativity(dm, 1)?.value,
            NegativityMeasure::QubitSubspace(l) => qubit_subspace_negativity(dm, l)?,
        };
        let mut row = vec![t * chi, population_outside(rho, run.keep)?, neg];
        for target in &run.targets {
            row.push(fidelity(&target.state, rho)?);
        }
        table.push(row)
    };

    let top;
    if gamma == 0.0 {
        let backend = match p.text("backend") {
            "ode" => Backend::ode(),
            _ => Backend::Expm,
        };
        let h = build_hamiltonian(&run.spec)?;
        let trace = evolve_closed(&h, &run.psi0, &times, backend)?;
        top = trace.max_leakage();
        for (s, &t) in trace.states.iter().zip(&times) {
            push(t, StateRef::Pure(s), &DensityMatrix::from_pure(s))?;
        }
    } else {
        let sys = DampedCoupler {
            coupler: run.spec.clone(),
            gamma,
            nbar: [p.real("nbar_a"), p.real("nbar_b")],
        };
        let (trace, _) = sys.negativity(&run.psi0, &times, run.measure, 0.0)?;
        top = trace.max_leakage();
        for (r, &t) in trace.states.iter().zip(&times) {
            push(t, StateRef::Mixed(r), r)?;
        }
    }
    table.meta("max_top_population", top);
    if top > p.real("max_top_population") {
        return Err(CliError::Physics(format!(
            "population {top:.3e} on the highest Fock level exceeds max_top_population = {}; raise the cutoff",
            p.real("max_top_population")
        )));
    }
    if let Some(leak) = table.column("leakage") {
        table.meta("max_leakage", leak.iter().copied().fold(0.0, f64::max));
    }
    Ok(table)
}

const COUPLER_LINEAR: &[ParamSpec] = &[
    EVOLUTION[0],
    EVOLUTION[1],
    EVOLUTION[2],
    EVOLUTION[3],
    EVOLUTION[4],
    EVOLUTION[5],
    EVOLUTION[6],
    EVOLUTION[7],
    param("alpha_over_chi", Kind::Real, "0.05", "drive on mode a"),
    param("epsilon_over_alpha", Kind::Real, "0.5", "linear coupling relative to the drive"),
    param("beta_over_chi", Kind::Real, "0", "drive on mode b"),
    param("cutoff", Kind::Int, "3", "Fock cutoff per mode (levels 0..=cutoff)"),
];

fn run_coupler_linear(p: &Params) -> CliResult<ResultTable> {
    let chi = p.real("chi");
    let alpha = p.real("alpha_over_chi") * chi;
    let spec = KerrCouplerSpec::linear(
        chi,
        C64::new(p.real("epsilon_over_alpha") * alpha, 0.0),
        C64::new(alpha, 0.0),
        C64::new(p.real("beta_over_chi") * chi, 0.0),
        p.int("cutoff"),
    );
    let cutoff = p.int("cutoff");
    run_coupler(
        p,
        CouplerRun {
            psi0: StateVector::vacuum(spec.layout()?),
            spec,
            targets: linear_coupler_targets(cutoff)?,
            keep: &[vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]],
            measure: NegativityMeasure::Full,
        },
    )
}

const COUPLER_NONLINEAR: &[ParamSpec] = &[
    EVOLUTION[0],
    param("t_max", Kind::NonNeg, "1000", "final dimensionless time chi t"),
    EVOLUTION[2],
    EVOLUTION[3],
    EVOLUTION[4],
    EVOLUTION[5],
    EVOLUTION[6],
    EVOLUTION[7],
    param("alpha_over_chi", Kind::Real, "0.05", "drive on mode a"),
    param("epsilon_over_chi", Kind::Real, "0.025", "two-photon exchange coupling"),
    param("cutoff", Kind::Int, "4", "Fock cutoff per mode (levels 0..=cutoff)"),
    param("start", Kind::Choice(&["fock20", "bell1"]), "fock20", "initial state |2,0> or (|20>+i|02>)/sqrt2"),
    param("measure", Kind::Choice(&["subspace", "full"]), "subspace", "negativity on {0,2}x{0,2} or the whole system"),
];

fn run_coupler_nonlinear(p: &Params) -> CliResult<ResultTable> {
    let chi = p.real("chi");
    let cutoff = p.int("cutoff");
    let spec = KerrCouplerSpec::nonlinear(
        chi,
        C64::new(p.real("epsilon_over_chi") * chi, 0.0),
        C64::new(p.real("alpha_over_chi") * chi, 0.0),
        cutoff,
    );
    let targets = nonlinear_coupler_targets(cutoff)?;
    let psi0 = match p.text("start") {
        "bell1" => targets[0].state.clone(),
        _ => StateVector::basis(spec.layout()?, &[2, 0])?,
    };
    let measure = match p.text("measure") {
        "full" => NegativityMeasure::Full,
        _ => NegativityMeasure::QubitSubspace([0, 2]),
    };
    run_coupler(
        p,
        CouplerRun {
            spec,
            psi0,
            targets,
            keep: &[vec![0, 0], vec![0, 2], vec![2, 0], vec![2, 2], vec![1, 2]],
            measure,
        },
    )
}

const COUPLER_PARAMETRIC: &[ParamSpec] = &[
    EVOLUTION[0],
    param("t_max", Kind::NonNeg, "1000", "final dimensionless time chi t"),
    EVOLUTION[2],
    EVOLUTION[3],
    EVOLUTION[4],
    EVOLUTION[5],
    EVOLUTION[6],
    EVOLUTION[7],
    param("g_over_chi", Kind::Real, "0.01", "parametric coupling"),
    param("cutoff", Kind::Int, "4", "Fock cutoff per mode (levels 0..=cutoff)"),
];

fn run_coupler_parametric(p: &Params) -> CliResult<ResultTable> {
    let chi = p.real("chi");
    let cutoff = p.int("cutoff");
    let spec = KerrCouplerSpec::parametric(chi, C64::new(p.real("g_over_chi") * chi, 0.0), cutoff);
    run_coupler(
        p,
        CouplerRun {
            psi0: StateVector::vacuum(spec.layout()?),
            spec,
            targets: parametric_targets(cutoff)?,
            keep: &[vec![0, 0], vec![1, 1], vec![2, 2]],
            measure: NegativityMeasure::Full,
        },
    )
}

const COUPLER_TRIPLE_W: &[ParamSpec] = &[
    param("epsilon", Kind::Real, "0.1", "pairwise exchange coupling (chi = 1)"),
    param("t_max", Kind::NonNeg, "100", "final time"),
    param("points", Kind::Int, "1001", "number of time samples"),
    EVOLUTION[3],
];

fn run_triple_w(p: &Params) -> CliResult<ResultTable> {
    let times = uniform_times(p.real("t_max"), p.int("points"));
    let backend = match p.text("backend") {
        "ode" => Backend::ode(),
        _ => Backend::Expm,
    };
    let r = w_state_evolution(p.real("epsilon"), &times, backend)?;
    let mut t = ResultTable::new(["tau", "w_overlap", "p001", "p010", "p100"]);
    for ((s, &tau), o) in r.trace.states.iter().zip(&times).zip(&r.overlaps) {
        let pop = |occ: &[usize]| s.amplitude(occ).map(|c| c.norm_sqr());
        t.push(vec![tau, *o, pop(&[0, 0, 1])?, pop(&[0, 1, 0])?, pop(&[1, 0, 0])?])?;
    }
    t.meta("closed_form_error", r.closed_form_error);
    Ok(t)
}

const SANDERS: &[ParamSpec] = &[
    param("n", Kind::Int, "2", "photons in the input |n,0>"),
    param("chi", Kind::Real, "1", "self- and cross-Kerr constant"),
    param("omega_a", Kind::Real, "0", "frequency of mode a"),
    param("omega_b", Kind::Real, "0", "frequency of mode b"),
    param("t2", Kind::NonNeg, "0", "duration of the self-Kerr stage"),
    param("t1_max", Kind::NonNeg, "3.141592653589793", "largest cross-Kerr duration scanned"),
    param("points", Kind::Int, "181", "number of cross-Kerr durations"),
    param("cutoff", Kind::Int, "4", "Fock cutoff per mode"),
];

fn run_sanders(p: &Params) -> CliResult<ResultTable> {
    let mut t = ResultTable::new(["t1", "noon_fidelity", "norm_deviation"]);
    for t1 in uniform_times(p.real("t1_max"), p.int("points")) {
        let params = SandersParams {
            chi: p.real("chi"),
            omega: [p.real("omega_a"), p.real("omega_b")],
            t1,
            t2: p.real("t2"),
        };
        let r = sanders_noon(p.int("n"), &params, p.int("cutoff"))?;
        t.push(vec![t1, r.noon_fidelity, r.norm_deviation])?;
    }
    Ok(t)
}

const HUSIMI: &[ParamSpec] = &[
    param("state", Kind::Choice(&["vacuum", "fock", "coherent", "squeezed"]), "vacuum", "single-mode input"),
    param("n", Kind::Int, "4", "Fock level for state = fock"),
    param("alpha", Kind::Complex, "(1.7320508075688772,0)", "amplitude for state = coherent"),
    param("xi", Kind::Complex, "(0.5,0)", "squeezing parameter for state = squeezed"),
    param("cutoff", Kind::Int, "40", "Fock cutoff"),
    param("half_width", Kind::NonNeg, "6", "grid covers [-w, w] on both axes"),
    param("resolution", Kind::Int, "121", "grid points per axis"),
];

fn run_husimi(p: &Params) -> CliResult<ResultTable> {
    let cutoff = p.int("cutoff");
    let state = match p.text("state") {
        "fock" => fock(p.int("n"), cutoff)?,
        "coherent" => coherent_amplitudes(CoherentSpec::new(p.complex("alpha"), cutoff), true)?,
        "squeezed" => squeezed_amplitudes(SqueezeSpec::vacuum(p.complex("xi"), cutoff))?.state,
        _ => fock(0, cutoff)?,
    };
    let grid = PhaseGrid::square(p.real("half_width"), p.int("resolution"))?;
    let q = husimi_q(&state, &grid)?;
    let mut t = ResultTable::new(["re", "im", "q"]);
    for (z, v) in grid.points().iter().zip(&q.values) {
        t.push(vec![z.re, z.im, *v])?;
    }
    let (peak, _) = q.argmax();
    t.meta("integral", q.integral());
    t.meta("peak", format!("({},{})", peak.re, peak.im));
    t.meta("peak_radius", peak.norm());
    t.meta("cell_area", grid.cell_area());
    Ok(t)
}

pub const PRESETS: &[Preset] = &[
    Preset { name: "ppb", about: "three-mode scissors heralding a qubit from a coherent state", params: PPB, run: run_ppb },
    Preset { name: "villas_boas", about: "N-level generalization of the three-mode scissors", params: VILLAS_BOAS, run: run_villas_boas },
    Preset { name: "kkgj", about: "qutrit scissors with two single photons and two counts", params: KKGJ, run: run_kkgj },
    Preset { name: "dakna", about: "alternating displacements and photon additions", params: DAKNA, run: run_dakna },
    Preset { name: "mz", about: "Mach-Zehnder scissors over a phase grid", params: MZ, run: run_mz },
    Preset { name: "multiport", about: "four-splitter network fitted to a hole-burned target", params: MULTIPORT, run: run_multiport },
    Preset { name: "kicked_kerr", about: "periodically kicked Kerr oscillator", params: KICKED, run: run_kicked },
    Preset { name: "kilin", about: "Fock-state generator check exp(i pi H / 2)|0> = |n>", params: KILIN, run: run_kilin },
    Preset { name: "coupler_linear", about: "driven Kerr coupler with linear exchange", params: COUPLER_LINEAR, run: run_coupler_linear },
    Preset { name: "coupler_nonlinear", about: "driven Kerr coupler with two-photon exchange", params: COUPLER_NONLINEAR, run: run_coupler_nonlinear },
    Preset { name: "coupler_parametric", about: "Kerr coupler with parametric pair creation", params: COUPLER_PARAMETRIC, run: run_coupler_parametric },
    Preset { name: "coupler_triple_w", about: "three exchange-coupled Kerr modes generating W states", params: COUPLER_TRIPLE_W, run: run_triple_w },
    Preset { name: "sanders_noon", about: "splitter, Kerr stage, splitter acting on |n,0>", params: SANDERS, run: run_sanders },
    Preset { name: "husimi", about: "Husimi Q function of a single-mode state on a grid", params: HUSIMI, run: run_husimi },
];

pub fn find(name: &str) -> CliResult<&'static Preset> {
    PRESETS.iter().find(|p| p.name == name).ok_or_else(|| {
        let names: Vec<_> = PRESETS.iter().map(|p| p.name).collect();
        CliError::config(format!("unknown preset `{name}` (available: {})", names.join(", ")))
    })
}
