use nalgebra::DMatrix;

use crate::error::Result;
use crate::invariants::{matrix_power, trace_product, InvariantSet};
use crate::liealg::{ChevalleyAlgebra, Representation};

use super::poisson::{Gradient, PhaseFunction};
use super::state::GcsState;

/// (T^d) = tr ρ(T)^d / c_ρ as a phase-space function of the T-spin only.
pub struct CasimirFunction<'a> {
    pub alg: &'a ChevalleyAlgebra,
    pub rep: &'a Representation,
    pub degree: u32,
}

impl CasimirFunction<'_> {
    fn t_matrix(&self, st: &GcsState) -> DMatrix<f64> {
        self.rep.matrix(&st.t_element(self.alg))
    }
}

impl PhaseFunction for CasimirFunction<'_> {
    fn value(&self, st: &GcsState) -> Result<f64> {
        let t = self.t_matrix(st);
        Ok(matrix_power(&t, self.degree).trace() / self.rep.index_f64())
    }

    fn gradient(&self, st: &GcsState) -> Result<Gradient> {
        let (l, m) = (self.alg.rank(), self.alg.num_positive());
        let rs = self.alg.root_system();
        let t = self.t_matrix(st);
        let d = self.degree;
        let pow = matrix_power(&t, d - 1);
        let c = self.rep.index_f64();
        let mut g = Gradient::zeros(l, m);
        for a in 0..m {
            let gen = self.rep.root(a) - self.rep.root(rs.neg(a));
            g.dt[a] = d as f64 * trace_product(&pow, &gen) / c;
        }
        Ok(g)
    }
}

/// Casimir values (T^{d_j}) for every even degree d_j, paired with the
/// degree. Their number equals rank U.
pub fn casimirs(
    st: &GcsState,
    alg: &ChevalleyAlgebra,
    inv: &InvariantSet,
) -> Result<Vec<(u32, f64)>> {
    let mut out = Vec::new();
    for spec in inv.specs() {
        if spec.degree % 2 != 0 {
            continue;
        }
        let rep = inv
            .rep_for(spec.index)
            .expect("even-degree traces are never degenerate");
        let f = CasimirFunction {
            alg,
            rep,
            degree: spec.degree,
        };
        out.push((spec.degree, f.value(st)?));
    }
    Ok(out)
}
