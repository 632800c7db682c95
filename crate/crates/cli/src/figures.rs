//! Figure data: a preset, fixed parameter defaults and the emitted columns.

use crate::error::{CliError, CliResult};

pub struct Figure {
    pub id: &'static str,
    pub about: &'static str,
    pub preset: &'static str,
    /// Applied before user overrides.
    pub defaults: &'static [(&'static str, &'static str)],
    /// Emitted columns; all when empty.
    pub columns: &'static [&'static str],
}

pub const FIGURES: &[Figure] = &[
    Figure { id: "q_vacuum", about: "Husimi Q of the vacuum", preset: "husimi", defaults: &[("state", "vacuum")], columns: &[] },
    Figure { id: "q_fock", about: "Husimi Q of a Fock state (ring at |alpha| = sqrt n)", preset: "husimi", defaults: &[("state", "fock")], columns: &[] },
    Figure { id: "q_coherent", about: "Husimi Q of a coherent state", preset: "husimi", defaults: &[("state", "coherent")], columns: &[] },
    Figure { id: "q_squeezed", about: "Husimi Q of a squeezed vacuum", preset: "husimi", defaults: &[("state", "squeezed")], columns: &[] },
    Figure {
        id: "leakage_linear",
        about: "linear coupler: population outside {00, 01, 10, 11}",
        preset: "coupler_linear",
        defaults: &[],
        columns: &["tau", "leakage"],
    },
    Figure {
        id: "bell_linear",
        about: "linear coupler: Bell-state fidelities",
        preset: "coupler_linear",
        defaults: &[],
        columns: &["tau", "fidelity_B1", "fidelity_B2", "fidelity_B3", "fidelity_B4"],
    },
    Figure {
        id: "bell_nonlinear",
        about: "nonlinear coupler from |2,0>: Bell-state fidelities",
        preset: "coupler_nonlinear",
        defaults: &[],
        columns: &["tau", "fidelity_B1", "fidelity_B2", "fidelity_B3"],
    },
    Figure {
        id: "negativity_damped",
        about: "damped linear coupler: negativity",
        preset: "coupler_linear",
        defaults: &[("gamma_over_chi", "0.002")],
        columns: &["tau", "negativity"],
    },
    Figure {
        id: "negativity_thermal",
        about: "damped nonlinear coupler from B1 with a thermal bath on mode a",
        preset: "coupler_nonlinear",
        defaults: &[
            ("epsilon_over_chi", "0.05"),
            ("alpha_over_chi", "0.05"),
            ("gamma_over_chi", "0.002"),
            ("nbar_a", "0.2"),
            ("start", "bell1"),
        ],
        columns: &["tau", "negativity"],
    },
    Figure {
        id: "negativity_pumped",
        about: "damped, uncoupled nonlinear coupler from B1 with a drive on mode a",
        preset: "coupler_nonlinear",
        defaults: &[
            ("epsilon_over_chi", "0"),
            ("alpha_over_chi", "0.05"),
            ("gamma_over_chi", "0.002"),
            ("start", "bell1"),
        ],
        columns: &["tau", "negativity"],
    },
];

pub fn find(id: &str) -> CliResult<&'static Figure> {
    FIGURES.iter().find(|f| f.id == id).ok_or_else(|| {
        let ids: Vec<_> = FIGURES.iter().map(|f| f.id).collect();
        CliError::config(format!("unknown figure `{id}` (available: {})", ids.join(", ")))
    })
}
