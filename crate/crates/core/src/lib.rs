//! Simulation and verification toolkit for generalized spin
//! Calogero–Sutherland systems with two spin types over simple Lie algebras.

pub mod cli;
pub mod dynamics;
pub mod error;
pub mod invariants;
pub mod lax;
pub mod liealg;
pub mod phase;
pub mod rmatrix;
pub mod sampling;

pub use error::{GcsError, LieError, Result};
