use serde::Serialize;

use crate::error::Result;
use crate::invariants::{binomial, polarized_traces, polarized_words, trace_product, InvariantSet};
use crate::liealg::{ChevalleyAlgebra, Family};
use crate::phase::{GcsState, Gradient, PhaseFunction};

use super::element::LaxMatrix;
use super::operators::{eta_lax, t_lax};

/// One integral I_{jk} = (T^{d_j−k} η^k).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IntegralEntry {
    /// One-based invariant index.
    pub j: usize,
    pub k: u32,
    pub degree: u32,
    pub value: f64,
}

/// I_{jk} as a phase-space function. It is the coefficient of s^{d−k} t^k
/// in tr ρ(sT + tη)^d divided by binom(d, k)·c_ρ, obtained from the exact
/// word expansion of (sA + tB)^d.
pub struct IntegralFunction<'a> {
    pub alg: &'a ChevalleyAlgebra,
    pub inv: &'a InvariantSet,
    /// Zero-based invariant index.
    pub index: usize,
    pub k: u32,
    pub floor: f64,
}

impl IntegralFunction<'_> {
    fn parts(&self, st: &GcsState) -> Result<(LaxMatrix, LaxMatrix, u32, f64)> {
        let rep = self
            .inv
            .rep_for(self.index)
            .expect("integral requested for a degenerate invariant");
        let t = t_lax(st, self.alg).to_matrix(rep);
        let eta = eta_lax(st, self.alg, self.floor)?.to_matrix(rep);
        let d = self.inv.specs()[self.index].degree;
        let norm = binomial(d, self.k) * rep.index_f64();
        Ok((t, eta, d, norm))
    }
}

impl PhaseFunction for IntegralFunction<'_> {
    fn value(&self, st: &GcsState) -> Result<f64> {
        let (t, eta, d, norm) = self.parts(st)?;
        Ok(polarized_traces(&t.value, &eta.value, d)[self.k as usize] / norm)
    }

    fn gradient(&self, st: &GcsState) -> Result<Gradient> {
        let (t, eta, d, norm) = self.parts(st)?;
        let k = self.k as usize;
        let q = polarized_words(&t.value, &eta.value, d - 1);
        let g: Vec<f64> = (0..t.partials.len())
            .map(|p| {
                let mut acc = 0.0;
                if k < d as usize {
                    acc += trace_product(&q[k], &t.partials[p]);
                }
                if k >= 1 {
                    acc += trace_product(&q[k - 1], &eta.partials[p]);
                }
                d as f64 * acc / norm
            })
            .collect();
        Ok(Gradient::from_flat(st.u.len(), st.t.len(), &g))
    }
}

/// Every I_{jk}, k = 0..d_j, for the invariants with a nondegenerate trace
/// realization.
pub fn integrals(
    st: &GcsState,
    alg: &ChevalleyAlgebra,
    inv: &InvariantSet,
    floor: f64,
) -> Result<Vec<IntegralEntry>> {
    let mut out = Vec::new();
    for spec in inv.specs() {
        let Some(rep) = inv.rep_for(spec.index) else {
            continue;
        };
        let t = t_lax(st, alg).to_matrix(rep);
        let eta = eta_lax(st, alg, floor)?.to_matrix(rep);
        let c = polarized_traces(&t.value, &eta.value, spec.degree);
        for (k, ck) in c.iter().enumerate() {
            out.push(IntegralEntry {
                j: spec.index + 1,
                k: k as u32,
                degree: spec.degree,
                value: ck / (binomial(spec.degree, k as u32) * rep.index_f64()),
            });
        }
    }
    Ok(out)
}

/// Integral and deficiency counts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntegralCounts {
    /// N_G = Σ (d_j + 1) − l.
    pub n_g: usize,
    /// ½ dim of the complex reduced space, 2|R+|.
    pub half_dim_complex: usize,
    pub deficiency_complex: i64,
    /// ½ dim of the real reduced space, Σ d_j − rank U.
    pub half_dim_real: usize,
    pub deficiency_real: i64,
    pub rank_u: usize,
    /// ½(N − 1)(N + 2) for sl(N).
    pub sl_closed_form: Option<usize>,
}

pub fn integral_counts(alg: &ChevalleyAlgebra) -> IntegralCounts {
    let rs = alg.root_system();
    let l = rs.rank();
    let n_g = rs.degrees().iter().map(|&d| d as usize + 1).sum::<usize>() - l;
    let half_dim_complex = 2 * rs.num_positive();
    let half_dim_real = rs.degrees().iter().map(|&d| d as usize).sum::<usize>() - rs.rank_u();
    let sl_closed_form = (rs.family() == Family::A).then(|| {
        let n = l + 1;
        (n - 1) * (n + 2) / 2
    });
    IntegralCounts {
        n_g,
        half_dim_complex,
        deficiency_complex: half_dim_complex as i64 - n_g as i64,
        half_dim_real,
        deficiency_real: half_dim_real as i64 - n_g as i64,
        rank_u: rs.rank_u(),
        sl_closed_form,
    }
}

/// Action of the real torus element with signs ε_i = ±1 on the simple
/// roots: T_α ↦ ε(α) T_α and S_α ↦ ε(α) S_α with ε(α) = Π ε_i^{c_i}.
pub fn torus_sign_action(st: &GcsState, alg: &ChevalleyAlgebra, signs: &[bool]) -> GcsState {
    let rs = alg.root_system();
    let mut out = st.clone();
    for a in 0..alg.num_positive() {
        let flips: i32 = rs.root(a).coeffs.iter().zip(signs).filter(|(_, &neg)| neg).map(|(c, _)| *c).sum();
        if flips % 2 != 0 {
            out.t[a] = -out.t[a];
            out.s[a] = -out.s[a];
        }
    }
    out
}
