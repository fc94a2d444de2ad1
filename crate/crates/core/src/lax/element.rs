use nalgebra::DMatrix;

use crate::error::{GcsError, Result};
use crate::invariants::{matrix_power, trace_product};
use crate::liealg::{AlgebraElement, ChevalleyAlgebra, RepKind, Representation};

/// An algebra-valued function of the state together with its partial
/// derivatives in flattened coordinate order [u, v, T, S].
#[derive(Clone, Debug)]
pub struct LaxElement {
    pub value: AlgebraElement<f64>,
    pub partials: Vec<AlgebraElement<f64>>,
    pub x: Option<f64>,
}

impl LaxElement {
    pub fn zero(alg: &ChevalleyAlgebra, ncoords: usize) -> Self {
        Self {
            value: AlgebraElement::zero(alg),
            partials: vec![AlgebraElement::zero(alg); ncoords],
            x: None,
        }
    }

    /// Σ c_i·L_i, with every term sharing the coordinate layout of the first.
    pub fn combine(terms: &[(f64, &LaxElement)]) -> Self {
        let (c0, first) = terms[0];
        let mut out = Self {
            value: first.value.scale(c0),
            partials: first.partials.iter().map(|p| p.scale(c0)).collect(),
            x: None,
        };
        for &(c, t) in &terms[1..] {
            out.value += &t.value.scale(c);
            for (o, p) in out.partials.iter_mut().zip(&t.partials) {
                *o += &p.scale(c);
            }
        }
        out
    }

    pub fn at(mut self, x: f64) -> Self {
        self.x = Some(x);
        self
    }

    pub fn to_matrix(&self, rep: &Representation) -> LaxMatrix {
        LaxMatrix {
            rep: rep.kind(),
            value: rep.matrix(&self.value),
            partials: self.partials.iter().map(|p| rep.matrix(p)).collect(),
            x: self.x,
        }
    }
}

/// Matrix realization ρ(L) of a Lax-type operator. `partials` follows the
/// flattened coordinate order [u, v, T, S] and is empty for operators that
/// are not parametrized by a reduced state.
#[derive(Clone, Debug)]
pub struct LaxMatrix {
    pub rep: RepKind,
    pub value: DMatrix<f64>,
    pub partials: Vec<DMatrix<f64>>,
    pub x: Option<f64>,
}

impl LaxMatrix {
    /// Σ_p ∂_pL · rates_p, the time derivative along a vector field.
    pub fn derivative(&self, rates: &[f64]) -> DMatrix<f64> {
        let n = self.value.nrows();
        let mut out = DMatrix::zeros(n, n);
        for (p, r) in self.partials.iter().zip(rates) {
            if *r != 0.0 {
                out += p * *r;
            }
        }
        out
    }

    pub fn trace_power(&self, k: u32) -> f64 {
        matrix_power(&self.value, k).trace()
    }

    /// ∂ tr L^k/∂x_p = k·tr(L^{k−1} ∂_pL) for every coordinate p.
    pub fn trace_power_gradient(&self, k: u32) -> Vec<f64> {
        let pow = matrix_power(&self.value, k - 1);
        self.partials
            .iter()
            .map(|p| k as f64 * trace_product(&pow, p))
            .collect()
    }
}

/// Fails when x is within `floor` of one of the poles.
pub(crate) fn check_poles(x: f64, poles: &[f64], floor: f64) -> Result<()> {
    if !x.is_finite() || poles.iter().any(|p| (x - p).abs() < floor) {
        return Err(GcsError::Pole { x });
    }
    Ok(())
}

/// Compact-part coefficients ½(c_α − c_{−α}) of an element, over R+.
pub fn compact_part(x: &AlgebraElement<f64>, alg: &ChevalleyAlgebra) -> Vec<f64> {
    let m = alg.num_positive();
    (0..m).map(|a| 0.5 * (x.roots[a] - x.roots[a + m])).collect()
}

/// Distance of an element from the compact subalgebra span(E_α − E_{−α}):
/// the largest |Cartan coefficient| or |c_α + c_{−α}|.
pub fn compact_defect(x: &AlgebraElement<f64>, alg: &ChevalleyAlgebra) -> f64 {
    let m = alg.num_positive();
    let cartan = x.cartan.iter().map(|h| h.abs()).fold(0.0, f64::max);
    (0..m)
        .map(|a| (x.roots[a] + x.roots[a + m]).abs())
        .fold(cartan, f64::max)
}
