//! Phase space, Lie–Poisson brackets and Hamiltonians.

mod casimir;
mod hamiltonian;
mod poisson;
mod state;

pub use casimir::{casimirs, CasimirFunction};
pub use hamiltonian::{
    eta_cs, hamiltonian_cs, hamiltonian_gcs, hamiltonian_gcs_gradient, resolve_cs_kappa,
    CsHamiltonian, GcsHamiltonian,
};
pub use poisson::{fd_gradient, Coordinate, FnFunction, Gradient, PhaseFunction, PoissonStructure};
pub use state::{
    eta_element, x_coefficients, y_coefficients, GcsState, RootTrig, SINGULAR_FLOOR,
};
