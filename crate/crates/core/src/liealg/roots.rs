use std::collections::HashMap;

use num_rational::Rational64;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::family::{type_data, Family, TypeData};
use crate::error::LieError;

/// A root stored by its coefficients in the simple-root basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Root {
    pub coeffs: Vec<i32>,
    pub height: i32,
    /// Squared length (α,α) with long roots normalized to 2.
    #[serde(skip)]
    pub norm2: Rational64,
}

/// A reduced irreducible root system with a fixed enumeration.
///
/// Positive roots occupy indices `0..m` ordered by height and then by
/// decreasing coefficient vector, so the simple roots come first in their
/// Bourbaki order. The negative of root `k` sits at index `m + k`.
#[derive(Clone, Debug)]
pub struct RootSystem {
    family: Family,
    rank: usize,
    gram: Vec<Vec<Rational64>>,
    cartan: Vec<Vec<i64>>,
    roots: Vec<Root>,
    n_pos: usize,
    coords: Vec<Vec<f64>>,
    data: TypeData,
    index: HashMap<Vec<i32>, usize>,
}

fn r(n: i64) -> Rational64 {
    Rational64::from_integer(n)
}

fn half(n: i64) -> Rational64 {
    Rational64::new(n, 2)
}

/// Simple roots of a Euclidean realization together with the factor that
/// rescales the standard dot product so that long roots have length² 2.
fn ambient_simple_roots(family: Family, l: usize) -> (Vec<Vec<Rational64>>, Rational64) {
    let unit = |dim: usize, i: usize| {
        let mut v = vec![r(0); dim];
        v[i] = r(1);
        v
    };
    let diff = |dim: usize, i: usize, j: usize| {
        let mut v = vec![r(0); dim];
        v[i] = r(1);
        v[j] = r(-1);
        v
    };
    match family {
        Family::A => ((0..l).map(|i| diff(l + 1, i, i + 1)).collect(), r(1)),
        Family::B => {
            let mut s: Vec<_> = (0..l - 1).map(|i| diff(l, i, i + 1)).collect();
            s.push(unit(l, l - 1));
            (s, r(1))
        }
        Family::C => {
            let mut s: Vec<_> = (0..l - 1).map(|i| diff(l, i, i + 1)).collect();
            let mut last = vec![r(0); l];
            last[l - 1] = r(2);
            s.push(last);
            (s, half(1))
        }
        Family::D => {
            let mut s: Vec<_> = (0..l - 1).map(|i| diff(l, i, i + 1)).collect();
            let mut last = vec![r(0); l];
            last[l - 2] = r(1);
            last[l - 1] = r(1);
            s.push(last);
            (s, r(1))
        }
        Family::G => (
            vec![vec![r(1), r(-1), r(0)], vec![r(-2), r(1), r(1)]],
            Rational64::new(1, 3),
        ),
        Family::F => (
            vec![
                diff(4, 1, 2),
                diff(4, 2, 3),
                unit(4, 3),
                vec![half(1), half(-1), half(-1), half(-1)],
            ],
            r(1),
        ),
        Family::E => {
            let mut a1 = vec![half(-1); 8];
            a1[0] = half(1);
            a1[7] = half(1);
            let mut a2 = vec![r(0); 8];
            a2[0] = r(1);
            a2[1] = r(1);
            let mut s = vec![a1, a2, diff(8, 1, 0)];
            for i in 2..7 {
                s.push(diff(8, i, i - 1));
            }
            s.truncate(l);
            (s, r(1))
        }
    }
}

impl RootSystem {
    /// Builds the root system of the simple type `(family, rank)`.
    pub fn new(family: Family, rank: usize) -> Result<Self, LieError> {
        let data = type_data(family, rank)?;
        let l = rank;
        let (ambient, scale) = ambient_simple_roots(family, l);
        let dot = |a: &[Rational64], b: &[Rational64]| {
            a.iter().zip(b).fold(r(0), |acc, (x, y)| acc + x * y) * scale
        };
        let gram: Vec<Vec<Rational64>> = (0..l)
            .map(|i| (0..l).map(|j| dot(&ambient[i], &ambient[j])).collect())
            .collect();
        let cartan: Vec<Vec<i64>> = (0..l)
            .map(|k| {
                (0..l)
                    .map(|j| {
                        let a = r(2) * gram[k][j] / gram[j][j];
                        debug_assert!(a.is_integer());
                        a.to_integer()
                    })
                    .collect()
            })
            .collect();

        let positive = positive_roots(&cartan);
        let n_pos = positive.len();
        let inner = |a: &[i32], b: &[i32]| {
            let mut acc = r(0);
            for i in 0..l {
                if a[i] == 0 {
                    continue;
                }
                for j in 0..l {
                    if b[j] != 0 {
                        acc += gram[i][j] * r(a[i] as i64 * b[j] as i64);
                    }
                }
            }
            acc
        };
        let mut roots = Vec::with_capacity(2 * n_pos);
        for c in &positive {
            roots.push(Root {
                height: c.iter().sum(),
                norm2: inner(c, c),
                coeffs: c.clone(),
            });
        }
        for k in 0..n_pos {
            let c: Vec<i32> = roots[k].coeffs.iter().map(|x| -x).collect();
            roots.push(Root {
                height: -roots[k].height,
                norm2: roots[k].norm2,
                coeffs: c,
            });
        }
        let index = roots
            .iter()
            .enumerate()
            .map(|(i, rt)| (rt.coeffs.clone(), i))
            .collect();

        let simple_coords = orthonormal_coords(&ambient, scale);
        let coords = roots
            .iter()
            .map(|rt| {
                let mut v = vec![0.0; l];
                for (i, &c) in rt.coeffs.iter().enumerate() {
                    for j in 0..l {
                        v[j] += c as f64 * simple_coords[i][j];
                    }
                }
                v
            })
            .collect();

        Ok(Self {
            family,
            rank,
            gram,
            cartan,
            roots,
            n_pos,
            coords,
            data,
            index,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Short name such as `A2` or `G2`.
    pub fn name(&self) -> String {
        format!("{}{}", self.family, self.rank)
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn root(&self, a: usize) -> &Root {
        &self.roots[a]
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn num_positive(&self) -> usize {
        self.n_pos
    }

    pub fn positive(&self) -> std::ops::Range<usize> {
        0..self.n_pos
    }

    pub fn simple(&self) -> std::ops::Range<usize> {
        0..self.rank
    }

    pub fn is_positive(&self, a: usize) -> bool {
        a < self.n_pos
    }

    /// Index of −α.
    pub fn neg(&self, a: usize) -> usize {
        if a < self.n_pos {
            a + self.n_pos
        } else {
            a - self.n_pos
        }
    }

    /// Index of the positive root among ±α.
    pub fn positive_part(&self, a: usize) -> usize {
        if a < self.n_pos {
            a
        } else {
            a - self.n_pos
        }
    }

    pub fn find(&self, coeffs: &[i32]) -> Option<usize> {
        self.index.get(coeffs).copied()
    }

    /// Index of α+β when it is a root.
    pub fn sum(&self, a: usize, b: usize) -> Option<usize> {
        let c: Vec<i32> = self.roots[a]
            .coeffs
            .iter()
            .zip(&self.roots[b].coeffs)
            .map(|(x, y)| x + y)
            .collect();
        self.find(&c)
    }

    /// Index of α−β when it is a root.
    pub fn diff(&self, a: usize, b: usize) -> Option<usize> {
        self.sum(a, self.neg(b))
    }

    /// Exact inner product (α,β).
    pub fn inner(&self, a: usize, b: usize) -> Rational64 {
        let (ca, cb) = (&self.roots[a].coeffs, &self.roots[b].coeffs);
        let mut acc = Rational64::zero();
        for i in 0..self.rank {
            for j in 0..self.rank {
                if ca[i] != 0 && cb[j] != 0 {
                    acc += self.gram[i][j] * r(ca[i] as i64 * cb[j] as i64);
                }
            }
        }
        acc
    }

    pub fn norm2(&self, a: usize) -> Rational64 {
        self.roots[a].norm2
    }

    pub fn norm2_f64(&self, a: usize) -> f64 {
        self.roots[a].norm2.to_f64().unwrap_or(f64::NAN)
    }

    /// Gram matrix of the simple roots.
    pub fn gram(&self) -> &[Vec<Rational64>] {
        &self.gram
    }

    /// Cartan matrix with entries a_kj = 2(α_k,α_j)/(α_j,α_j).
    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Coordinates α(j) of root `a` in the orthonormal Cartan basis.
    pub fn coords(&self, a: usize) -> &[f64] {
        &self.coords[a]
    }

    /// α(u) = Σ_j α(j) u_j.
    pub fn pairing(&self, a: usize, u: &[f64]) -> f64 {
        self.coords[a].iter().zip(u).map(|(x, y)| x * y).sum()
    }

    /// Largest p ≥ 0 with β − pα a root (β ≠ ±α).
    pub fn string_down(&self, alpha: usize, beta: usize) -> usize {
        let (ca, cb) = (&self.roots[alpha].coeffs, &self.roots[beta].coeffs);
        let mut p = 0;
        loop {
            let k = (p + 1) as i32;
            let c: Vec<i32> = cb.iter().zip(ca).map(|(b, a)| b - k * a).collect();
            if self.find(&c).is_none() {
                return p;
            }
            p += 1;
        }
    }

    /// Label `a<c1>_<c2>_..` built from the simple-root coefficients, with a
    /// leading `m` for negative roots.
    pub fn label(&self, a: usize) -> String {
        let rt = &self.roots[a];
        let sign = if a < self.n_pos { "a" } else { "ma" };
        let body: Vec<String> = rt.coeffs.iter().map(|c| c.abs().to_string()).collect();
        format!("{sign}{}", body.join("_"))
    }

    pub fn degrees(&self) -> &[u32] {
        &self.data.degrees
    }

    pub fn type_data(&self) -> &TypeData {
        &self.data
    }

    pub fn rank_u(&self) -> usize {
        self.data.rank_u
    }

    /// dim g = l + |R|.
    pub fn dim(&self) -> usize {
        self.rank + self.roots.len()
    }
}

/// Positive roots generated from the Cartan matrix by unbroken root strings.
fn positive_roots(cartan: &[Vec<i64>]) -> Vec<Vec<i32>> {
    let l = cartan.len();
    let simple: Vec<Vec<i32>> = (0..l)
        .map(|i| {
            let mut c = vec![0; l];
            c[i] = 1;
            c
        })
        .collect();
    let mut all: Vec<Vec<i32>> = simple.clone();
    let mut known: std::collections::HashSet<Vec<i32>> = all.iter().cloned().collect();
    let mut layer = simple;
    while !layer.is_empty() {
        let mut next = Vec::new();
        for beta in &layer {
            for i in 0..l {
                if beta.iter().enumerate().all(|(k, &c)| c == i32::from(k == i)) {
                    continue;
                }
                // p: how far the α_i-string through β extends downward.
                let mut p = 0i64;
                let mut probe = beta.clone();
                loop {
                    probe[i] -= 1;
                    if probe[i] >= 0 && known.contains(&probe) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let pairing: i64 = (0..l).map(|k| beta[k] as i64 * cartan[k][i]).sum();
                let q = p - pairing;
                if q > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if known.insert(up.clone()) {
                        next.push(up);
                    }
                }
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    all.sort_by(|a, b| {
        let ha: i32 = a.iter().sum();
        let hb: i32 = b.iter().sum();
        ha.cmp(&hb).then_with(|| b.cmp(a))
    });
    all
}

/// Coordinates of the simple roots in an orthonormal basis of their span,
/// obtained by Gram-Schmidt in the ambient space.
fn orthonormal_coords(ambient: &[Vec<Rational64>], scale: Rational64) -> Vec<Vec<f64>> {
    let s = scale.to_f64().unwrap_or(1.0).sqrt();
    let vecs: Vec<Vec<f64>> = ambient
        .iter()
        .map(|v| v.iter().map(|x| x.to_f64().unwrap_or(0.0) * s).collect())
        .collect();
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for v in &vecs {
        let mut w = v.clone();
        for _ in 0..2 {
            for q in &basis {
                let d: f64 = w.iter().zip(q).map(|(a, b)| a * b).sum();
                for (wi, qi) in w.iter_mut().zip(q) {
                    *wi -= d * qi;
                }
            }
        }
        let n = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        basis.push(w.into_iter().map(|x| x / n).collect());
    }
    vecs.iter()
        .map(|v| {
            basis
                .iter()
                .map(|q| q.iter().zip(v).map(|(a, b)| a * b).sum())
                .collect()
        })
        .collect()
}
