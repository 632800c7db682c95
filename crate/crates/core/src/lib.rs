//! Truncated Fock-space simulation of optical state truncation.
//!
//! * [`fock`]: layouts, states, operators, exponentials and integrators.
//! * [`states`]: coherent, squeezed and named entangled states.
//! * [`metrics`]: Husimi Q, quadratures, fidelity and entanglement measures.
//! * [`lqs`]: beam-splitter networks with conditional photodetection.
//! * [`nqs`]: Kerr-coupler Hamiltonians with unitary and damped evolution.

pub mod error;
pub mod fock;
pub mod lqs;
pub mod metrics;
pub mod nqs;
pub mod states;

pub use error::{Error, Result};
pub use fock::{DensityMatrix, LinearOperator, ModeLayout, StateRef, StateVector};
pub use num_complex::Complex64 as C64;
