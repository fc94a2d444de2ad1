//! Invariant polynomials realized as traces of representation matrices.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::Result;
use crate::liealg::{ChevalleyAlgebra, Family, RepKind, Representation};

/// Which representation supplies the trace for a basic invariant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TraceSource {
    Primary,
    Defining,
    /// No available representation yields a nonvanishing trace power.
    Degenerate,
}

/// One basic invariant of degree d_j and the trace used to realize it.
#[derive(Clone, Debug, Serialize)]
pub struct InvariantSpec {
    /// Zero-based position j−1 in the degree list.
    pub index: usize,
    pub degree: u32,
    pub source: TraceSource,
    pub note: Option<String>,
}

/// Trace realizations of the basic invariants d_1..d_l.
///
/// Odd powers of the adjoint representation vanish identically, since ad(X)
/// is skew for the invariant form. Those degrees fall back to the defining
/// representation when the algebra is classical and are reported as
/// degenerate otherwise.
#[derive(Clone, Debug)]
pub struct InvariantSet {
    specs: Vec<InvariantSpec>,
    primary: Representation,
    defining: Option<Representation>,
}

impl InvariantSet {
    pub fn new(alg: &ChevalleyAlgebra, primary: Representation) -> Result<Self> {
        let family = alg.root_system().family();
        let needs_fallback = primary.kind() == RepKind::Adjoint
            && alg.root_system().degrees().iter().any(|d| d % 2 == 1);
        let defining = if needs_fallback && family.is_classical() {
            Some(Representation::new(alg, RepKind::Defining)?)
        } else {
            None
        };
        let degrees = alg.root_system().degrees();
        let mut specs = Vec::with_capacity(degrees.len());
        for (index, &degree) in degrees.iter().enumerate() {
            let odd_adjoint = primary.kind() == RepKind::Adjoint && degree % 2 == 1;
            let source = match (odd_adjoint, &defining) {
                (false, _) => TraceSource::Primary,
                (true, Some(_)) => TraceSource::Defining,
                (true, None) => TraceSource::Degenerate,
            };
            let repeated = degrees.iter().filter(|&&d| d == degree).count() > 1;
            let note = match source {
                TraceSource::Degenerate => {
                    Some(format!("odd adjoint trace of degree {degree} vanishes identically"))
                }
                _ if repeated && family == Family::D => Some(format!(
                    "degree {degree} occurs twice; the Pfaffian-type invariant is not a trace power and the trace duplicates the other"
                )),
                _ => None,
            };
            specs.push(InvariantSpec {
                index,
                degree,
                source,
                note,
            });
        }
        Ok(Self {
            specs,
            primary,
            defining,
        })
    }

    /// Uses the defining representation for classical types and the
    /// adjoint representation otherwise.
    pub fn default_for(alg: &ChevalleyAlgebra) -> Result<Self> {
        let kind = if alg.root_system().family().is_classical() {
            RepKind::Defining
        } else {
            RepKind::Adjoint
        };
        Self::new(alg, Representation::new(alg, kind)?)
    }

    pub fn specs(&self) -> &[InvariantSpec] {
        &self.specs
    }

    pub fn primary(&self) -> &Representation {
        &self.primary
    }

    /// Representation realizing invariant `index`, if any.
    pub fn rep_for(&self, index: usize) -> Option<&Representation> {
        match self.specs[index].source {
            TraceSource::Primary => Some(&self.primary),
            TraceSource::Defining => self.defining.as_ref(),
            TraceSource::Degenerate => None,
        }
    }
}

pub fn matrix_power(m: &DMatrix<f64>, d: u32) -> DMatrix<f64> {
    let mut out = DMatrix::identity(m.nrows(), m.ncols());
    for _ in 0..d {
        out = &out * m;
    }
    out
}

/// tr(A·B) without forming the product.
pub fn trace_product(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    a.transpose().dot(b)
}

/// Q[k] = sum of all words in A and B of length `len` containing exactly k
/// copies of B, so that (sA + tB)^len = Σ_k s^{len−k} t^k Q[k].
pub fn polarized_words(a: &DMatrix<f64>, b: &DMatrix<f64>, len: u32) -> Vec<DMatrix<f64>> {
    let n = a.nrows();
    let mut q = vec![DMatrix::identity(n, n)];
    for _ in 0..len {
        let mut next = vec![DMatrix::zeros(n, n); q.len() + 1];
        for (k, w) in q.iter().enumerate() {
            next[k] += w * a;
            next[k + 1] += w * b;
        }
        q = next;
    }
    q
}

/// Coefficients of s^{d−k} t^k in tr(sA + tB)^d for k = 0..d.
pub fn polarized_traces(a: &DMatrix<f64>, b: &DMatrix<f64>, d: u32) -> Vec<f64> {
    polarized_words(a, b, d).iter().map(|w| w.trace()).collect()
}

pub fn binomial(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}
