use serde::Serialize;

use super::chevalley::ChevalleyAlgebra;
use super::family::Family;

/// Root data of an algebra, without structure constants.
#[derive(Clone, Debug, Serialize)]
pub struct RootsExport {
    pub family: Family,
    pub rank: usize,
    /// Simple-root coefficient vectors in enumeration order.
    pub roots: Vec<Vec<i32>>,
    pub positive: Vec<usize>,
    pub simple: Vec<usize>,
    pub labels: Vec<String>,
    /// Squared lengths as decimal strings of the exact rationals.
    pub norms: Vec<String>,
    /// Coordinates in the orthonormal Cartan basis.
    pub coords: Vec<Vec<f64>>,
    pub cartan_matrix: Vec<Vec<i64>>,
    pub degrees: Vec<u32>,
}

/// Root data together with the structure constants `[α, β, C_{α,β}]`.
#[derive(Clone, Debug, Serialize)]
pub struct AlgebraExport {
    pub family: Family,
    pub rank: usize,
    pub roots: Vec<Vec<i32>>,
    pub positive: Vec<usize>,
    #[serde(rename = "C")]
    pub c: Vec<[i64; 3]>,
    pub degrees: Vec<u32>,
}

impl ChevalleyAlgebra {
    pub fn export_roots(&self) -> RootsExport {
        let rs = self.root_system();
        RootsExport {
            family: rs.family(),
            rank: rs.rank(),
            roots: rs.roots().iter().map(|r| r.coeffs.clone()).collect(),
            positive: rs.positive().collect(),
            simple: rs.simple().collect(),
            labels: (0..rs.num_roots()).map(|a| rs.label(a)).collect(),
            norms: rs.roots().iter().map(|r| r.norm2.to_string()).collect(),
            coords: (0..rs.num_roots()).map(|a| rs.coords(a).to_vec()).collect(),
            cartan_matrix: rs.cartan_matrix().to_vec(),
            degrees: rs.degrees().to_vec(),
        }
    }

    pub fn export(&self) -> AlgebraExport {
        let rs = self.root_system();
        AlgebraExport {
            family: rs.family(),
            rank: rs.rank(),
            roots: rs.roots().iter().map(|r| r.coeffs.clone()).collect(),
            positive: rs.positive().collect(),
            c: self
                .structure_constants()
                .into_iter()
                .map(|(a, b, v)| [a as i64, b as i64, v])
                .collect(),
            degrees: rs.degrees().to_vec(),
        }
    }
}
