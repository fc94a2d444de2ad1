use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_rational::Rational64;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::chevalley::{AlgebraTag, ChevalleyAlgebra};
use super::element::AlgebraElement;
use super::exact::QMatrix;
use super::family::Family;
use crate::error::LieError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RepKind {
    Adjoint,
    Defining,
}

impl fmt::Display for RepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RepKind::Adjoint => write!(f, "adjoint"),
            RepKind::Defining => write!(f, "defining"),
        }
    }
}

impl FromStr for RepKind {
    type Err = LieError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "adjoint" => Ok(RepKind::Adjoint),
            "defining" => Ok(RepKind::Defining),
            _ => Err(LieError::UnknownRepresentation(s.to_string())),
        }
    }
}

/// A matrix representation ρ of a Chevalley algebra.
///
/// `exact` holds the images of the Chevalley basis {H_i} ∪ {E_α} over the
/// rationals; `cartan` and `roots` hold the floating-point images of the
/// numerical basis {e_j} ∪ {E_α}.
#[derive(Clone, Debug)]
pub struct Representation {
    kind: RepKind,
    tag: AlgebraTag,
    dim: usize,
    exact: Vec<QMatrix>,
    cartan: Vec<DMatrix<f64>>,
    roots: Vec<DMatrix<f64>>,
    index: Rational64,
}

impl Representation {
    pub fn new(alg: &ChevalleyAlgebra, kind: RepKind) -> Result<Self, LieError> {
        let l = alg.rank();
        let exact: Vec<QMatrix> = match kind {
            RepKind::Adjoint => (0..alg.dim()).map(|k| alg.ad_exact(k)).collect(),
            RepKind::Defining => defining_exact(alg)?,
        };
        let dim = exact[0].dim();
        let (cartan, roots) = match kind {
            RepKind::Adjoint => (
                (0..l).map(|j| alg.ad_basis(j)).collect(),
                (0..alg.num_roots()).map(|a| alg.ad_basis(l + a)).collect(),
            ),
            RepKind::Defining => {
                let h: Vec<DMatrix<f64>> = exact[..l].iter().map(QMatrix::to_f64).collect();
                let cartan = alg
                    .cartan_change()
                    .iter()
                    .map(|row| {
                        let mut m = DMatrix::zeros(dim, dim);
                        for (i, &c) in row.iter().enumerate() {
                            m += &h[i] * c;
                        }
                        m
                    })
                    .collect();
                (cartan, exact[l..].iter().map(QMatrix::to_f64).collect())
            }
        };
        // c_ρ from the trace form on H_1, whose invariant norm is 4/(α_1,α_1).
        let h1 = &exact[0];
        let norm = Rational64::from_integer(4) / alg.root_system().norm2(0);
        let index = (h1 * h1).trace() / norm;
        Ok(Self {
            kind,
            tag: alg.tag(),
            dim,
            exact,
            cartan,
            roots,
            index,
        })
    }

    pub fn kind(&self) -> RepKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn tag(&self) -> AlgebraTag {
        self.tag
    }

    /// Dynkin-type index c_ρ with tr(ρ(a)ρ(b)) = c_ρ (a,b).
    pub fn index(&self) -> Rational64 {
        self.index
    }

    pub fn index_f64(&self) -> f64 {
        self.index.to_f64().unwrap_or(f64::NAN)
    }

    /// Exact image of the k-th Chevalley basis vector.
    pub fn exact_basis(&self, k: usize) -> &QMatrix {
        &self.exact[k]
    }

    /// ρ(e_j).
    pub fn cartan(&self, j: usize) -> &DMatrix<f64> {
        &self.cartan[j]
    }

    /// ρ(E_α).
    pub fn root(&self, a: usize) -> &DMatrix<f64> {
        &self.roots[a]
    }

    /// Image of the k-th numerical basis vector.
    pub fn basis(&self, k: usize) -> &DMatrix<f64> {
        let l = self.cartan.len();
        if k < l {
            &self.cartan[k]
        } else {
            &self.roots[k - l]
        }
    }

    /// ρ(x) for a real element.
    pub fn matrix(&self, x: &AlgebraElement<f64>) -> DMatrix<f64> {
        debug_assert_eq!(x.tag(), self.tag);
        let mut m = DMatrix::zeros(self.dim, self.dim);
        for (j, &h) in x.cartan.iter().enumerate() {
            if h != 0.0 {
                m += &self.cartan[j] * h;
            }
        }
        for (a, &c) in x.roots.iter().enumerate() {
            if c != 0.0 {
                m += &self.roots[a] * c;
            }
        }
        m
    }

    /// Recovers the algebra coefficients of a matrix in the image of ρ using
    /// the trace form.
    pub fn coefficients(&self, alg: &ChevalleyAlgebra, m: &DMatrix<f64>) -> AlgebraElement<f64> {
        let rs = alg.root_system();
        let c = self.index_f64();
        let mut x = AlgebraElement::zero(alg);
        for j in 0..alg.rank() {
            x.cartan[j] = (m * &self.cartan[j]).trace() / c;
        }
        for a in 0..alg.num_roots() {
            // tr(ρ(E_α)ρ(E_{−α})) = c_ρ·2/(α,α).
            let dual = &self.roots[rs.neg(a)];
            x.roots[a] = (m * dual).trace() / c * rs.norm2_f64(a) / 2.0;
        }
        x
    }

    /// Largest entry of ρ([x,y]) − [ρ(x),ρ(y)] over all Chevalley basis
    /// pairs, computed exactly.
    pub fn homomorphism_residual_exact(&self, alg: &ChevalleyAlgebra) -> Rational64 {
        let n = alg.dim();
        let mut worst = Rational64::zero();
        for x in 0..n {
            for y in 0..n {
                let mut lhs = QMatrix::zeros(self.dim);
                for (k, v) in alg.bracket_basis_exact(x, y) {
                    lhs = &lhs + &self.exact[k].scale(v);
                }
                let rhs = self.exact[x].commutator(&self.exact[y]);
                let r = (&lhs - &rhs).max_abs();
                if r > worst {
                    worst = r;
                }
            }
        }
        worst
    }
}

/// Standard matrix realizations of the classical algebras, with Chevalley
/// generators matched to the abstract simple roots and the remaining root
/// vectors obtained from brackets.
fn defining_exact(alg: &ChevalleyAlgebra) -> Result<Vec<QMatrix>, LieError> {
    let rs = alg.root_system();
    let l = rs.rank();
    let family = rs.family();
    let unsupported = || LieError::UnsupportedRepresentation {
        rep: "defining".into(),
        algebra: alg.tag().to_string(),
    };
    let q = Rational64::from_integer;
    let (n, positions, form): (usize, Vec<(usize, usize)>, Option<QMatrix>) = match family {
        Family::A => (l + 1, (0..l).map(|i| (i, i + 1)).collect(), None),
        Family::B => {
            let n = 2 * l + 1;
            let mut pos: Vec<_> = (0..l - 1).map(|i| (i, i + 1)).collect();
            pos.push((l - 1, l));
            let mut j = QMatrix::zeros(n);
            for k in 0..n {
                j[(k, n - 1 - k)] = q(1);
            }
            (n, pos, Some(j))
        }
        Family::C => {
            let n = 2 * l;
            let mut pos: Vec<_> = (0..l - 1).map(|i| (i, i + 1)).collect();
            pos.push((l - 1, l));
            let mut j = QMatrix::zeros(n);
            for k in 0..n {
                j[(k, n - 1 - k)] = if k < l { q(1) } else { q(-1) };
            }
            (n, pos, Some(j))
        }
        Family::D => {
            let n = 2 * l;
            let mut pos: Vec<_> = (0..l - 1).map(|i| (i, i + 1)).collect();
            pos.push((l - 2, l));
            let mut j = QMatrix::zeros(n);
            for k in 0..n {
                j[(k, n - 1 - k)] = q(1);
            }
            (n, pos, Some(j))
        }
        _ => return Err(unsupported()),
    };

    // Projection X ↦ ½(X + σ(X)) onto {X : XᵀJ + JX = 0}; J² = ±1.
    let project = |x: QMatrix| -> QMatrix {
        match &form {
            None => x,
            Some(j) => {
                let jj = j * j;
                let sign = jj[(0, 0)];
                let jinv = j.scale(sign);
                let sigma = (&(&jinv * &x.transpose()) * j).scale(q(-1));
                (&x + &sigma).scale(Rational64::new(1, 2))
            }
        }
    };

    let nr = rs.num_roots();
    let m = rs.num_positive();
    let mut root_mats: Vec<Option<QMatrix>> = vec![None; nr];
    let mut h = Vec::with_capacity(l);
    for (i, &(p, r)) in positions.iter().enumerate() {
        let e = project(QMatrix::unit(n, p, r));
        let et = e.transpose();
        let lambda = e
            .commutator(&et)
            .commutator(&e)
            .ratio_to(&e)
            .expect("simple root vector is an ad-eigenvector");
        let f = et.scale(q(2) / lambda);
        h.push(e.commutator(&f));
        root_mats[i] = Some(e);
        root_mats[i + m] = Some(f);
    }
    for g in l..m {
        let (i, beta) = (0..l)
            .find_map(|i| rs.diff(g, i).filter(|&b| b < m).map(|b| (i, b)))
            .expect("non-simple positive root has a simple predecessor");
        let up = root_mats[i]
            .as_ref()
            .unwrap()
            .commutator(root_mats[beta].as_ref().unwrap())
            .scale(q(1) / q(alg.c(i, beta)));
        let (ni, nb) = (rs.neg(i), rs.neg(beta));
        let down = root_mats[ni]
            .as_ref()
            .unwrap()
            .commutator(root_mats[nb].as_ref().unwrap())
            .scale(q(1) / q(alg.c(ni, nb)));
        root_mats[g] = Some(up);
        root_mats[g + m] = Some(down);
    }
    let mut out = h;
    out.extend(root_mats.into_iter().map(|x| x.expect("all root vectors built")));
    Ok(out)
}
