//! Root systems, Chevalley bases, structure constants, representations and
//! the invariant form of the simple Lie algebras.

mod chevalley;
mod element;
mod exact;
mod export;
mod family;
mod rep;
mod roots;

pub use chevalley::{AlgebraTag, ChevalleyAlgebra, ExactReport, SparseQ};
pub use element::{AlgebraElement, Scalar};
pub use exact::QMatrix;
pub use export::{AlgebraExport, RootsExport};
pub use family::{type_data, Family, TypeData};
pub use rep::{RepKind, Representation};
pub use roots::{Root, RootSystem};

use crate::error::LieError;

/// Builds the root system of `(family, rank)`.
pub fn build_root_system(family: Family, rank: usize) -> Result<RootSystem, LieError> {
    RootSystem::new(family, rank)
}

/// Builds the Chevalley algebra with extraspecial-pair sign conventions.
pub fn build_chevalley(rs: RootSystem) -> ChevalleyAlgebra {
    ChevalleyAlgebra::new(rs)
}

/// Builds a representation by label.
pub fn representation(alg: &ChevalleyAlgebra, kind: RepKind) -> Result<Representation, LieError> {
    Representation::new(alg, kind)
}
