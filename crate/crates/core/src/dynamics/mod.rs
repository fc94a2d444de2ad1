//! Equations of motion, the Hamiltonian-flow oracle and time integration.

mod eom;
mod gyrostat;
mod integrate;
mod oracle;

pub use eom::{eom_gcs, eom_gcs_printed, eom_intro_form, StateDerivative};
pub use gyrostat::{gyrostat_rhs, gyrostat_rhs_s, GyrostatSpec};
pub use integrate::{
    integrate, rk4_step, FnMonitor, IntegratorConfig, Method, Monitor, Trajectory, WallEvent,
};
pub use oracle::hamiltonian_flow_oracle;
