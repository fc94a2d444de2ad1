use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::NumAssign;

use super::chevalley::{AlgebraTag, ChevalleyAlgebra};
use crate::error::LieError;

/// Scalar field for algebra elements: `f64` or `Complex64`.
pub trait Scalar:
    Copy + std::fmt::Debug + PartialEq + NumAssign + Neg<Output = Self> + From<f64> + 'static
{
}

impl Scalar for f64 {}
impl Scalar for Complex64 {}

/// Element Σ h_j e_j + Σ_α x_α E_α of a simple Lie algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraElement<T = f64> {
    tag: AlgebraTag,
    pub cartan: Vec<T>,
    pub roots: Vec<T>,
}

impl<T: Scalar> AlgebraElement<T> {
    pub fn zero(alg: &ChevalleyAlgebra) -> Self {
        Self {
            tag: alg.tag(),
            cartan: vec![T::zero(); alg.rank()],
            roots: vec![T::zero(); alg.num_roots()],
        }
    }

    pub fn new(alg: &ChevalleyAlgebra, cartan: Vec<T>, roots: Vec<T>) -> Result<Self, LieError> {
        if cartan.len() != alg.rank() {
            return Err(LieError::DimensionMismatch {
                what: "Cartan part",
                expected: alg.rank(),
                found: cartan.len(),
            });
        }
        if roots.len() != alg.num_roots() {
            return Err(LieError::DimensionMismatch {
                what: "root part",
                expected: alg.num_roots(),
                found: roots.len(),
            });
        }
        Ok(Self {
            tag: alg.tag(),
            cartan,
            roots,
        })
    }

    /// The k-th basis vector of {e_j} ∪ {E_α}.
    pub fn basis(alg: &ChevalleyAlgebra, k: usize) -> Self {
        let mut x = Self::zero(alg);
        x.set(k, T::one());
        x
    }

    /// Σ_{α∈R+} c_α (E_α − E_{−α}), the compact combination used for spins.
    pub fn compact(alg: &ChevalleyAlgebra, coeffs: &[T]) -> Self {
        let mut x = Self::zero(alg);
        let m = alg.num_positive();
        for (a, &c) in coeffs.iter().enumerate().take(m) {
            x.roots[a] = c;
            x.roots[a + m] = -c;
        }
        x
    }

    pub fn tag(&self) -> AlgebraTag {
        self.tag
    }

    pub fn dim(&self) -> usize {
        self.cartan.len() + self.roots.len()
    }

    /// Coefficient on the k-th basis vector.
    pub fn get(&self, k: usize) -> T {
        let l = self.cartan.len();
        if k < l {
            self.cartan[k]
        } else {
            self.roots[k - l]
        }
    }

    pub fn set(&mut self, k: usize, v: T) {
        let l = self.cartan.len();
        if k < l {
            self.cartan[k] = v;
        } else {
            self.roots[k - l] = v;
        }
    }

    /// Coefficients flattened in basis order.
    pub fn to_vec(&self) -> Vec<T> {
        self.cartan.iter().chain(&self.roots).copied().collect()
    }

    pub fn from_vec(alg: &ChevalleyAlgebra, v: &[T]) -> Result<Self, LieError> {
        if v.len() != alg.dim() {
            return Err(LieError::DimensionMismatch {
                what: "coefficient vector",
                expected: alg.dim(),
                found: v.len(),
            });
        }
        let l = alg.rank();
        Self::new(alg, v[..l].to_vec(), v[l..].to_vec())
    }

    pub fn scale(&self, s: T) -> Self {
        Self {
            tag: self.tag,
            cartan: self.cartan.iter().map(|&x| x * s).collect(),
            roots: self.roots.iter().map(|&x| x * s).collect(),
        }
    }

    /// Image under Ad of the torus element exp(u): E_α ↦ e^{α(u)} E_α.
    pub fn ad_torus(&self, alg: &ChevalleyAlgebra, u: &[f64]) -> Self {
        let rs = alg.root_system();
        let mut out = self.clone();
        for (a, x) in out.roots.iter_mut().enumerate() {
            *x *= T::from(rs.pairing(a, u).exp());
        }
        out
    }

    fn same_algebra(&self, other: &Self) -> Result<(), LieError> {
        if self.tag != other.tag {
            return Err(LieError::AlgebraMismatch {
                expected: self.tag.to_string(),
                found: other.tag.to_string(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, LieError> {
        self.same_algebra(other)?;
        Ok(self + other)
    }
}

impl<T: Scalar> Add for &AlgebraElement<T> {
    type Output = AlgebraElement<T>;
    fn add(self, rhs: Self) -> AlgebraElement<T> {
        debug_assert_eq!(self.tag, rhs.tag);
        AlgebraElement {
            tag: self.tag,
            cartan: self.cartan.iter().zip(&rhs.cartan).map(|(&a, &b)| a + b).collect(),
            roots: self.roots.iter().zip(&rhs.roots).map(|(&a, &b)| a + b).collect(),
        }
    }
}

impl<T: Scalar> Sub for &AlgebraElement<T> {
    type Output = AlgebraElement<T>;
    fn sub(self, rhs: Self) -> AlgebraElement<T> {
        debug_assert_eq!(self.tag, rhs.tag);
        AlgebraElement {
            tag: self.tag,
            cartan: self.cartan.iter().zip(&rhs.cartan).map(|(&a, &b)| a - b).collect(),
            roots: self.roots.iter().zip(&rhs.roots).map(|(&a, &b)| a - b).collect(),
        }
    }
}

impl<T: Scalar> AddAssign<&AlgebraElement<T>> for AlgebraElement<T> {
    fn add_assign(&mut self, rhs: &AlgebraElement<T>) {
        debug_assert_eq!(self.tag, rhs.tag);
        for (a, &b) in self.cartan.iter_mut().zip(&rhs.cartan) {
            *a += b;
        }
        for (a, &b) in self.roots.iter_mut().zip(&rhs.roots) {
            *a += b;
        }
    }
}

impl<T: Scalar> Mul<T> for &AlgebraElement<T> {
    type Output = AlgebraElement<T>;
    fn mul(self, s: T) -> AlgebraElement<T> {
        self.scale(s)
    }
}

impl ChevalleyAlgebra {
    fn check_tag<T: Scalar>(&self, x: &AlgebraElement<T>) -> Result<(), LieError> {
        if x.tag() != self.tag() {
            return Err(LieError::AlgebraMismatch {
                expected: self.tag().to_string(),
                found: x.tag().to_string(),
            });
        }
        Ok(())
    }

    /// Lie bracket of two elements, computed from the commutation relations.
    pub fn bracket<T: Scalar>(
        &self,
        a: &AlgebraElement<T>,
        b: &AlgebraElement<T>,
    ) -> Result<AlgebraElement<T>, LieError> {
        self.check_tag(a)?;
        self.check_tag(b)?;
        let rs = self.root_system();
        let l = self.rank();
        let nr = self.num_roots();
        let mut out = AlgebraElement::<T>::zero(self);
        // Cartan–root terms: [h, E_β] = β(h) E_β.
        for beta in 0..nr {
            let c = rs.coords(beta);
            let mut ha = T::zero();
            let mut hb = T::zero();
            for j in 0..l {
                ha += a.cartan[j] * T::from(c[j]);
                hb += b.cartan[j] * T::from(c[j]);
            }
            out.roots[beta] += ha * b.roots[beta] - hb * a.roots[beta];
        }
        for alpha in 0..nr {
            let xa = a.roots[alpha];
            if xa == T::zero() {
                continue;
            }
            for beta in 0..nr {
                let yb = b.roots[beta];
                if yb == T::zero() {
                    continue;
                }
                if beta == rs.neg(alpha) {
                    for (j, &h) in self.coroot_coords(alpha).iter().enumerate() {
                        out.cartan[j] += xa * yb * T::from(h);
                    }
                } else if let Some(g) = self.sum(alpha, beta) {
                    out.roots[g] += xa * yb * T::from(self.c(alpha, beta) as f64);
                }
            }
        }
        Ok(out)
    }

    /// Invariant form with (e_i,e_j) = δ_ij and (E_α,E_β) = 2δ_{α,−β}/(α,α).
    pub fn killing<T: Scalar>(
        &self,
        a: &AlgebraElement<T>,
        b: &AlgebraElement<T>,
    ) -> Result<T, LieError> {
        self.check_tag(a)?;
        self.check_tag(b)?;
        let rs = self.root_system();
        let mut acc = T::zero();
        for (&x, &y) in a.cartan.iter().zip(&b.cartan) {
            acc += x * y;
        }
        for alpha in 0..self.num_roots() {
            let x = a.roots[alpha];
            if x.is_zero() {
                continue;
            }
            acc += x * b.roots[rs.neg(alpha)] * T::from(2.0 / rs.norm2_f64(alpha));
        }
        Ok(acc)
    }

    /// Matrix of ad(a) in the basis {e_j} ∪ {E_α}.
    pub fn ad(&self, a: &AlgebraElement<f64>) -> Result<nalgebra::DMatrix<f64>, LieError> {
        self.check_tag(a)?;
        let n = self.dim();
        let mut m = nalgebra::DMatrix::zeros(n, n);
        for j in 0..n {
            let col = self.bracket(a, &AlgebraElement::basis(self, j))?.to_vec();
            for (k, v) in col.into_iter().enumerate() {
                m[(k, j)] = v;
            }
        }
        Ok(m)
    }
}
