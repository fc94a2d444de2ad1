use std::ops::{Add, Mul, Sub};

use num_rational::Rational64;
use num_traits::{Signed, ToPrimitive, Zero};

/// Dense square matrix over the rationals, used where identities must hold
/// exactly.
#[derive(Clone, Debug, PartialEq)]
pub struct QMatrix {
    n: usize,
    data: Vec<Rational64>,
}

impl QMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![Rational64::zero(); n * n],
        }
    }

    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n);
        m[(i, j)] = Rational64::from_integer(1);
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn scale(&self, s: Rational64) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    pub fn trace(&self) -> Rational64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> Rational64 {
        self.data
            .iter()
            .map(|x| x.abs())
            .fold(Rational64::zero(), |a, b| if b > a { b } else { a })
    }

    /// Solves `self = λ·other` for λ when `other` is nonzero and the two are
    /// proportional.
    pub fn ratio_to(&self, other: &Self) -> Option<Rational64> {
        let k = other.data.iter().position(|x| !x.is_zero())?;
        let lambda = self.data[k] / other.data[k];
        (&other.scale(lambda) == self).then_some(lambda)
    }

    pub fn to_f64(&self) -> nalgebra::DMatrix<f64> {
        nalgebra::DMatrix::from_fn(self.n, self.n, |i, j| {
            self[(i, j)].to_f64().unwrap_or(f64::NAN)
        })
    }
}

impl std::ops::Index<(usize, usize)> for QMatrix {
    type Output = Rational64;
    fn index(&self, (i, j): (usize, usize)) -> &Rational64 {
        &self.data[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational64 {
        &mut self.data[i * self.n + j]
    }
}

impl Add for &QMatrix {
    type Output = QMatrix;
    fn add(self, rhs: &QMatrix) -> QMatrix {
        QMatrix {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &QMatrix {
    type Output = QMatrix;
    fn sub(self, rhs: &QMatrix) -> QMatrix {
        QMatrix {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &QMatrix {
    type Output = QMatrix;
    fn mul(self, rhs: &QMatrix) -> QMatrix {
        let n = self.n;
        let mut out = QMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.data[k * n + j];
                    if !b.is_zero() {
                        out.data[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }
}
