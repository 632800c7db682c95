//! Truncated multimode Fock space: layouts, states, operators and the
//! numerical kernels (matrix exponential, adaptive ODE, sparse products)
//! used by the simulators.

pub mod density;
pub mod expm;
pub mod layout;
pub mod ode;
pub mod operator;
pub mod sparse;
pub mod state;
pub mod tensor;

pub use density::{hermitian_eigenvalues, DensityMatrix, StateRef};
pub use expm::{expm, expm_pade, Spectral};
pub use layout::ModeLayout;
pub use ode::Dopri5;
pub use operator::{displacement, squeeze, LinearOperator};
pub use sparse::CsrMatrix;
pub use state::{warn_on_leakage, StateVector, LEAKAGE_WARN_THRESHOLD};
pub use tensor::{tensor, Tensor};
