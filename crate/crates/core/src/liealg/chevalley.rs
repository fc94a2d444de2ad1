use std::collections::HashMap;

use num_rational::Rational64;
use num_traits::{ToPrimitive, Zero};

use super::exact::QMatrix;
use super::family::Family;
use super::roots::RootSystem;
use crate::error::LieError;

/// Identifies the algebra an element or representation was built for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraTag {
    pub family: Family,
    pub rank: usize,
}

impl std::fmt::Display for AlgebraTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

/// Sparse vector over the Chevalley basis {H_1..H_l} ∪ {E_α}.
pub type SparseQ = Vec<(usize, Rational64)>;

/// A simple Lie algebra presented in a Chevalley basis.
///
/// Two bases share the root vectors E_α: the exact basis uses the simple
/// coroots H_i in the Cartan subalgebra, the numerical basis uses an
/// orthonormal basis e_j. Basis index `k < l` is a Cartan vector and
/// `l + a` is the root vector of root `a`.
#[derive(Clone, Debug)]
pub struct ChevalleyAlgebra {
    rs: RootSystem,
    tag: AlgebraTag,
    c: Vec<i64>,
    sums: Vec<Option<usize>>,
    decompositions: Vec<Vec<(usize, usize)>>,
    coroot: Vec<Vec<i64>>,
    coroot_f64: Vec<Vec<f64>>,
    cartan_change: Vec<Vec<f64>>,
}

impl ChevalleyAlgebra {
    pub fn new(rs: RootSystem) -> Self {
        let nr = rs.num_roots();
        let l = rs.rank();
        let mut sums = vec![None; nr * nr];
        let mut decompositions = vec![Vec::new(); nr];
        for a in 0..nr {
            for b in 0..nr {
                if let Some(g) = rs.sum(a, b) {
                    sums[a * nr + b] = Some(g);
                    decompositions[g].push((a, b));
                }
            }
        }
        let c = carter_constants(&rs, &sums);

        let coroot: Vec<Vec<i64>> = (0..nr)
            .map(|a| {
                let n2 = rs.norm2(a);
                rs.root(a)
                    .coeffs
                    .iter()
                    .enumerate()
                    .map(|(i, &ci)| {
                        let x = Rational64::from_integer(ci as i64) * rs.gram()[i][i] / n2;
                        debug_assert!(x.is_integer());
                        x.to_integer()
                    })
                    .collect()
            })
            .collect();
        let coroot_f64: Vec<Vec<f64>> = (0..nr)
            .map(|a| {
                let n2 = rs.norm2_f64(a);
                rs.coords(a).iter().map(|x| 2.0 * x / n2).collect()
            })
            .collect();
        // Rows of `hc` are the simple coroots in the e-basis; invert to
        // express each e_j through the H_i.
        let hc = nalgebra::DMatrix::from_fn(l, l, |i, j| coroot_f64[i][j]);
        let inv = hc
            .try_inverse()
            .expect("simple coroots are linearly independent");
        let cartan_change = (0..l)
            .map(|j| (0..l).map(|i| inv[(j, i)]).collect())
            .collect();

        let tag = AlgebraTag {
            family: rs.family(),
            rank: rs.rank(),
        };
        Self {
            rs,
            tag,
            c,
            sums,
            decompositions,
            coroot,
            coroot_f64,
            cartan_change,
        }
    }

    /// Builds the algebra of the simple type `(family, rank)`.
    pub fn build(family: Family, rank: usize) -> Result<Self, LieError> {
        Ok(Self::new(RootSystem::new(family, rank)?))
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn tag(&self) -> AlgebraTag {
        self.tag
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn num_roots(&self) -> usize {
        self.rs.num_roots()
    }

    pub fn num_positive(&self) -> usize {
        self.rs.num_positive()
    }

    pub fn dim(&self) -> usize {
        self.rs.dim()
    }

    /// Index of α+β when it is a root.
    pub fn sum(&self, a: usize, b: usize) -> Option<usize> {
        self.sums[a * self.num_roots() + b]
    }

    /// Integer structure constant C_{α,β}; zero when α+β is not a root.
    pub fn c(&self, a: usize, b: usize) -> i64 {
        self.c[a * self.num_roots() + b]
    }

    /// N_{α,β} = −C_{α,β}(α,α)(β,β)/(4(γ,γ)) with γ = α+β; zero otherwise.
    pub fn n(&self, a: usize, b: usize) -> Rational64 {
        match self.sum(a, b) {
            Some(g) => {
                -Rational64::from_integer(self.c(a, b)) * self.rs.norm2(a) * self.rs.norm2(b)
                    / (Rational64::from_integer(4) * self.rs.norm2(g))
            }
            None => Rational64::zero(),
        }
    }

    pub fn n_f64(&self, a: usize, b: usize) -> f64 {
        self.n(a, b).to_f64().unwrap_or(f64::NAN)
    }

    /// Ordered pairs (α,β) of roots with α+β = γ.
    pub fn decompositions(&self, g: usize) -> &[(usize, usize)] {
        &self.decompositions[g]
    }

    /// All ordered pairs (α,β, C_{α,β}) with α+β a root.
    pub fn structure_constants(&self) -> Vec<(usize, usize, i64)> {
        let nr = self.num_roots();
        let mut out = Vec::new();
        for a in 0..nr {
            for b in 0..nr {
                if self.sum(a, b).is_some() {
                    out.push((a, b, self.c(a, b)));
                }
            }
        }
        out
    }

    /// Coefficients of H_α = 2α/(α,α) in the simple coroots.
    pub fn coroot(&self, a: usize) -> &[i64] {
        &self.coroot[a]
    }

    /// Coordinates 2α(j)/(α,α) of H_α in the orthonormal basis.
    pub fn coroot_coords(&self, a: usize) -> &[f64] {
        &self.coroot_f64[a]
    }

    /// e_j = Σ_i M_ji H_i.
    pub fn cartan_change(&self) -> &[Vec<f64>] {
        &self.cartan_change
    }

    /// ⟨β, α_i^∨⟩ as an integer.
    fn pairing_coroot(&self, b: usize, i: usize) -> i64 {
        let cm = self.rs.cartan_matrix();
        self.rs
            .root(b)
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, &c)| c as i64 * cm[k][i])
            .sum()
    }

    /// Bracket of two exact basis vectors.
    pub fn bracket_basis_exact(&self, x: usize, y: usize) -> SparseQ {
        let l = self.rank();
        let q = Rational64::from_integer;
        match (x < l, y < l) {
            (true, true) => Vec::new(),
            (true, false) => {
                let k = self.pairing_coroot(y - l, x);
                if k == 0 {
                    Vec::new()
                } else {
                    vec![(y, q(k))]
                }
            }
            (false, true) => self
                .bracket_basis_exact(y, x)
                .into_iter()
                .map(|(k, v)| (k, -v))
                .collect(),
            (false, false) => {
                let (a, b) = (x - l, y - l);
                if b == self.rs.neg(a) {
                    self.coroot[a]
                        .iter()
                        .enumerate()
                        .filter(|(_, &c)| c != 0)
                        .map(|(i, &c)| (i, q(c)))
                        .collect()
                } else if let Some(g) = self.sum(a, b) {
                    vec![(l + g, q(self.c(a, b)))]
                } else {
                    Vec::new()
                }
            }
        }
    }

    /// Bracket of two exact sparse vectors.
    pub fn bracket_exact(&self, x: &SparseQ, y: &SparseQ) -> SparseQ {
        let mut acc: HashMap<usize, Rational64> = HashMap::new();
        for &(i, a) in x {
            for &(j, b) in y {
                for (k, v) in self.bracket_basis_exact(i, j) {
                    *acc.entry(k).or_insert_with(Rational64::zero) += a * b * v;
                }
            }
        }
        let mut out: SparseQ = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        out.sort_by_key(|(k, _)| *k);
        out
    }

    /// Invariant form on exact basis vectors: (H_i,H_j) = (α_i^∨,α_j^∨),
    /// (E_α,E_{−α}) = 2/(α,α).
    pub fn killing_basis_exact(&self, x: usize, y: usize) -> Rational64 {
        let l = self.rank();
        let rs = &self.rs;
        match (x < l, y < l) {
            (true, true) => {
                let g = rs.gram();
                Rational64::from_integer(4) * g[x][y] / (g[x][x] * g[y][y])
            }
            (false, false) if y - l == rs.neg(x - l) => {
                Rational64::from_integer(2) / rs.norm2(x - l)
            }
            _ => Rational64::zero(),
        }
    }

    pub fn killing_exact(&self, x: &SparseQ, y: &SparseQ) -> Rational64 {
        let mut acc = Rational64::zero();
        for &(i, a) in x {
            for &(j, b) in y {
                acc += a * b * self.killing_basis_exact(i, j);
            }
        }
        acc
    }

    /// Adjoint matrix of an exact basis vector in the Chevalley basis.
    pub fn ad_exact(&self, x: usize) -> QMatrix {
        let n = self.dim();
        let mut m = QMatrix::zeros(n);
        for j in 0..n {
            for (k, v) in self.bracket_basis_exact(x, j) {
                m[(k, j)] = v;
            }
        }
        m
    }

    /// Bracket of two numerical basis vectors {e_j} ∪ {E_α}, returned as
    /// (index, coefficient) pairs.
    pub fn bracket_basis(&self, x: usize, y: usize) -> Vec<(usize, f64)> {
        let l = self.rank();
        match (x < l, y < l) {
            (true, true) => Vec::new(),
            (true, false) => vec![(y, self.rs.coords(y - l)[x])],
            (false, true) => vec![(x, -self.rs.coords(x - l)[y])],
            (false, false) => {
                let (a, b) = (x - l, y - l);
                if b == self.rs.neg(a) {
                    self.coroot_f64[a].iter().copied().enumerate().collect()
                } else if let Some(g) = self.sum(a, b) {
                    vec![(l + g, self.c(a, b) as f64)]
                } else {
                    Vec::new()
                }
            }
        }
    }

    /// Adjoint matrix of a numerical basis vector in the basis {e_j} ∪ {E_α}.
    pub fn ad_basis(&self, x: usize) -> nalgebra::DMatrix<f64> {
        let n = self.dim();
        let mut m = nalgebra::DMatrix::zeros(n, n);
        for j in 0..n {
            for (k, v) in self.bracket_basis(x, j) {
                m[(k, j)] += v;
            }
        }
        m
    }

    /// Runs every exact structural check and returns the first violation.
    pub fn check_exact(&self) -> Result<ExactReport, String> {
        let mut report = ExactReport::default();
        self.check_constants(&mut report)?;
        self.check_jacobi(&mut report)?;
        self.check_killing_invariance(&mut report)?;
        Ok(report)
    }

    /// Antisymmetry, reality, the length relation for C_{α+β,−α}, the
    /// root-string rule, and the two closed forms for N.
    pub fn check_constants(&self, report: &mut ExactReport) -> Result<(), String> {
        let rs = &self.rs;
        let nr = self.num_roots();
        let q = Rational64::from_integer;
        for a in 0..nr {
            for b in 0..nr {
                let Some(g) = self.sum(a, b) else { continue };
                let c = self.c(a, b);
                let name = || format!("({}, {})", rs.label(a), rs.label(b));
                if c == 0 {
                    return Err(format!("C{} vanishes although the sum is a root", name()));
                }
                if self.c(b, a) != -c {
                    return Err(format!("antisymmetry fails for {}", name()));
                }
                if self.c(rs.neg(a), rs.neg(b)) != -c {
                    return Err(format!("C(-a,-b) = -C(a,b) fails for {}", name()));
                }
                let lhs = q(self.c(g, rs.neg(a)));
                let rhs = -(rs.norm2(b) / rs.norm2(g)) * q(c);
                if lhs != rhs {
                    return Err(format!("length relation for C(a+b,-a) fails for {}", name()));
                }
                let p = rs.string_down(a, b) as i64;
                if c.abs() != p + 1 {
                    return Err(format!("|C| = {} but p + 1 = {} for {}", c.abs(), p + 1, name()));
                }
                let n_direct = self.n(a, b);
                let n_closed = -q(c) * rs.norm2(a) * rs.norm2(b) / (q(4) * rs.norm2(g));
                if n_direct != n_closed {
                    return Err(format!("N closed form fails for {}", name()));
                }
                if self.n(g, rs.neg(a)) != rs.norm2(a) / q(4) * q(c) {
                    return Err(format!("N(a+b,-a) = (a,a)C/4 fails for {}", name()));
                }
                report.pairs_checked += 1;
            }
        }
        Ok(())
    }

    /// Jacobi identity on all basis triples in exact arithmetic.
    pub fn check_jacobi(&self, report: &mut ExactReport) -> Result<(), String> {
        let n = self.dim();
        let brackets: Vec<Vec<SparseQ>> = (0..n)
            .map(|x| (0..n).map(|y| self.bracket_basis_exact(x, y)).collect())
            .collect();
        for x in 0..n {
            for y in x + 1..n {
                for z in y + 1..n {
                    let mut acc: HashMap<usize, Rational64> = HashMap::new();
                    for (first, last) in [((x, y), z), ((y, z), x), ((z, x), y)] {
                        for &(k, a) in &brackets[first.0][first.1] {
                            for &(m, b) in &brackets[k][last] {
                                *acc.entry(m).or_insert_with(Rational64::zero) += a * b;
                            }
                        }
                    }
                    if let Some((k, v)) = acc.iter().find(|(_, v)| !v.is_zero()) {
                        return Err(format!(
                            "Jacobi fails on basis triple ({x}, {y}, {z}): component {k} = {v}"
                        ));
                    }
                    report.triples_checked += 1;
                }
            }
        }
        Ok(())
    }

    /// ([c,a],b) + (a,[c,b]) = 0 on all basis triples.
    pub fn check_killing_invariance(&self, report: &mut ExactReport) -> Result<(), String> {
        let n = self.dim();
        let unit = |k: usize| vec![(k, Rational64::from_integer(1))];
        for c in 0..n {
            for a in 0..n {
                let ca = self.bracket_basis_exact(c, a);
                for b in 0..n {
                    let cb = self.bracket_basis_exact(c, b);
                    let v = self.killing_exact(&ca, &unit(b)) + self.killing_exact(&unit(a), &cb);
                    if !v.is_zero() {
                        return Err(format!("invariance fails on basis triple ({c}, {a}, {b})"));
                    }
                }
            }
        }
        report.invariance_checked = true;
        Ok(())
    }
}

/// Counts of exact checks that passed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExactReport {
    pub pairs_checked: usize,
    pub triples_checked: usize,
    pub invariance_checked: bool,
}

/// Structure constants from extraspecial pairs with positive signs.
fn carter_constants(rs: &RootSystem, sums: &[Option<usize>]) -> Vec<i64> {
    let nr = rs.num_roots();
    let m = rs.num_positive();
    let l = rs.rank();
    let sum = |a: usize, b: usize| sums[a * nr + b];
    let mut special: HashMap<(usize, usize), i64> = HashMap::new();

    for xi in l..m {
        let pairs: Vec<(usize, usize)> = (0..xi)
            .filter_map(|a| {
                rs.diff(xi, a)
                    .filter(|&b| b < m && a < b)
                    .map(|b| (a, b))
            })
            .collect();
        let (a0, b0) = pairs[0];
        let p = rs.string_down(a0, b0) as i64;
        special.insert((a0, b0), p + 1);
        let n_ex = Rational64::from_integer(p + 1);
        for &(a, b) in &pairs[1..] {
            let mut acc = Rational64::zero();
            let (na0, nb0) = (rs.neg(a0), rs.neg(b0));
            if let Some(d) = sum(b, na0) {
                acc += general(rs, sums, &special, b, na0) * general(rs, sums, &special, a, nb0)
                    / rs.norm2(d);
            }
            if let Some(d) = sum(a, na0) {
                acc += general(rs, sums, &special, na0, a) * general(rs, sums, &special, b, nb0)
                    / rs.norm2(d);
            }
            let val = rs.norm2(xi) / n_ex * acc;
            assert!(val.is_integer(), "non-integral structure constant");
            special.insert((a, b), val.to_integer());
        }
    }

    let mut c = vec![0i64; nr * nr];
    for a in 0..nr {
        for b in 0..nr {
            if sum(a, b).is_some() {
                let v = general(rs, sums, &special, a, b);
                assert!(v.is_integer(), "non-integral structure constant");
                c[a * nr + b] = v.to_integer();
            }
        }
    }
    c
}

/// Reduces an arbitrary pair with α+β ∈ R to a special pair of positive
/// roots; returns zero when α+β is not a root.
fn general(
    rs: &RootSystem,
    sums: &[Option<usize>],
    special: &HashMap<(usize, usize), i64>,
    a: usize,
    b: usize,
) -> Rational64 {
    let nr = rs.num_roots();
    let Some(c) = sums[a * nr + b] else {
        return Rational64::zero();
    };
    let q = Rational64::from_integer;
    match (rs.is_positive(a), rs.is_positive(b)) {
        (true, true) => {
            if a < b {
                q(special[&(a, b)])
            } else {
                -q(special[&(b, a)])
            }
        }
        (false, false) => -general(rs, sums, special, rs.neg(a), rs.neg(b)),
        (true, false) => {
            if rs.is_positive(c) {
                -(rs.norm2(c) / rs.norm2(a)) * general(rs, sums, special, rs.neg(b), c)
            } else {
                let g = rs.neg(c);
                rs.norm2(g) / rs.norm2(b) * general(rs, sums, special, g, a)
            }
        }
        (false, true) => -general(rs, sums, special, b, a),
    }
}
