use nalgebra::DMatrix;

use crate::error::Result;
use crate::liealg::ChevalleyAlgebra;

use super::state::GcsState;

/// Gradient of a phase-space function, split by coordinate block.
#[derive(Clone, Debug, PartialEq)]
pub struct Gradient {
    pub du: Vec<f64>,
    pub dv: Vec<f64>,
    pub dt: Vec<f64>,
    pub ds: Vec<f64>,
}

impl Gradient {
    pub fn zeros(l: usize, m: usize) -> Self {
        Self {
            du: vec![0.0; l],
            dv: vec![0.0; l],
            dt: vec![0.0; m],
            ds: vec![0.0; m],
        }
    }

    pub fn from_flat(l: usize, m: usize, g: &[f64]) -> Self {
        let st = GcsState::from_flat(l, m, g);
        Self {
            du: st.u,
            dv: st.v,
            dt: st.t,
            ds: st.s,
        }
    }

    pub fn to_flat(&self) -> Vec<f64> {
        let mut x = self.du.clone();
        x.extend(&self.dv);
        x.extend(&self.dt);
        x.extend(&self.ds);
        x
    }

    /// a·self + b·other.
    pub fn combine(&self, a: f64, other: &Self, b: f64) -> Self {
        let f = |x: &[f64], y: &[f64]| x.iter().zip(y).map(|(p, q)| a * p + b * q).collect();
        Self {
            du: f(&self.du, &other.du),
            dv: f(&self.dv, &other.dv),
            dt: f(&self.dt, &other.dt),
            ds: f(&self.ds, &other.ds),
        }
    }
}

/// A scalar function on phase space with an optional analytic gradient.
pub trait PhaseFunction {
    fn value(&self, st: &GcsState) -> Result<f64>;

    /// Gradient at `st`; defaults to central finite differences.
    fn gradient(&self, st: &GcsState) -> Result<Gradient> {
        fd_gradient(|x| self.value(x), st)
    }
}

/// Wraps a closure; its gradient comes from finite differences.
pub struct FnFunction<F>(pub F);

impl<F: Fn(&GcsState) -> Result<f64>> PhaseFunction for FnFunction<F> {
    fn value(&self, st: &GcsState) -> Result<f64> {
        (self.0)(st)
    }
}

/// The k-th flattened coordinate as a function.
#[derive(Clone, Copy, Debug)]
pub struct Coordinate(pub usize);

impl PhaseFunction for Coordinate {
    fn value(&self, st: &GcsState) -> Result<f64> {
        Ok(st.coord(self.0))
    }

    fn gradient(&self, st: &GcsState) -> Result<Gradient> {
        let mut g = vec![0.0; st.dim()];
        g[self.0] = 1.0;
        Ok(Gradient::from_flat(st.u.len(), st.t.len(), &g))
    }
}

/// Central-difference gradient with step cbrt(ε)·max(1,|x|).
pub fn fd_gradient(f: impl Fn(&GcsState) -> Result<f64>, st: &GcsState) -> Result<Gradient> {
    let h0 = f64::EPSILON.cbrt();
    let n = st.dim();
    let mut g = vec![0.0; n];
    let mut probe = st.clone();
    for (k, gk) in g.iter_mut().enumerate() {
        let x = st.coord(k);
        let h = h0 * x.abs().max(1.0);
        *probe.coord_mut(k) = x + h;
        let fp = f(&probe)?;
        *probe.coord_mut(k) = x - h;
        let fm = f(&probe)?;
        *probe.coord_mut(k) = x;
        *gk = (fp - fm) / (2.0 * h);
    }
    Ok(Gradient::from_flat(st.u.len(), st.t.len(), &g))
}

/// Lie–Poisson structure: canonical (v,u) pairs plus the two spin sectors
/// with opposite signs.
///
/// `table[a*m + b]` lists the terms c·T_k of {T_a, T_b} over positive
/// roots k, assembled from N_{α,β}T_{α+β} − N_{α,−β}T_{α−β} with
/// T_{−γ} = −T_γ.
#[derive(Clone, Debug)]
pub struct PoissonStructure {
    l: usize,
    m: usize,
    table: Vec<Vec<(usize, f64)>>,
}

impl PoissonStructure {
    pub fn new(alg: &ChevalleyAlgebra) -> Self {
        let rs = alg.root_system();
        let (l, m) = (alg.rank(), alg.num_positive());
        let mut table = vec![Vec::new(); m * m];
        for a in 0..m {
            for b in 0..m {
                let entry = &mut table[a * m + b];
                let mut push = |g: usize, c: f64| {
                    if c == 0.0 {
                        return;
                    }
                    let (k, sign) = if g < m { (g, 1.0) } else { (g - m, -1.0) };
                    entry.push((k, sign * c));
                };
                if let Some(g) = alg.sum(a, b) {
                    push(g, alg.n_f64(a, b));
                }
                let nb = rs.neg(b);
                if let Some(g) = alg.sum(a, nb) {
                    push(g, -alg.n_f64(a, nb));
                }
            }
        }
        Self { l, m, table }
    }

    /// Terms of {T_a, T_b} as (positive-root index, coefficient).
    pub fn spin_terms(&self, a: usize, b: usize) -> &[(usize, f64)] {
        &self.table[a * self.m + b]
    }

    /// {T_a, T_b} evaluated on the spin vector `t`.
    pub fn t_bracket(&self, t: &[f64], a: usize, b: usize) -> f64 {
        self.spin_terms(a, b).iter().map(|&(k, c)| c * t[k]).sum()
    }

    /// {S_a, S_b} = −(same table) evaluated on `s`.
    pub fn s_bracket(&self, s: &[f64], a: usize, b: usize) -> f64 {
        -self.t_bracket(s, a, b)
    }

    /// {F, G} from the two gradients.
    pub fn bracket_gradients(&self, st: &GcsState, df: &Gradient, dg: &Gradient) -> f64 {
        let mut acc = 0.0;
        for j in 0..self.l {
            acc += df.dv[j] * dg.du[j] - df.du[j] * dg.dv[j];
        }
        for a in 0..self.m {
            let (fa_t, fa_s) = (df.dt[a], df.ds[a]);
            if fa_t == 0.0 && fa_s == 0.0 {
                continue;
            }
            for b in 0..self.m {
                for &(k, c) in self.spin_terms(a, b) {
                    acc += c * (fa_t * dg.dt[b] * st.t[k] - fa_s * dg.ds[b] * st.s[k]);
                }
            }
        }
        acc
    }

    /// {F, G} at `st`.
    pub fn bracket(
        &self,
        st: &GcsState,
        f: &dyn PhaseFunction,
        g: &dyn PhaseFunction,
    ) -> Result<f64> {
        Ok(self.bracket_gradients(st, &f.gradient(st)?, &g.gradient(st)?))
    }

    /// Matrix of fundamental brackets P_pq = {x_p, x_q} in flattened order.
    pub fn tensor(&self, st: &GcsState) -> DMatrix<f64> {
        let (l, m) = (self.l, self.m);
        let n = 2 * l + 2 * m;
        let mut p = DMatrix::zeros(n, n);
        for j in 0..l {
            p[(l + j, j)] = 1.0;
            p[(j, l + j)] = -1.0;
        }
        for a in 0..m {
            for b in 0..m {
                p[(2 * l + a, 2 * l + b)] = self.t_bracket(&st.t, a, b);
                p[(2 * l + m + a, 2 * l + m + b)] = self.s_bracket(&st.s, a, b);
            }
        }
        p
    }

    /// The Hamiltonian vector field x ↦ {H, x} applied to every coordinate.
    pub fn flow(&self, st: &GcsState, dh: &Gradient) -> Vec<f64> {
        let (l, m) = (self.l, self.m);
        let mut out = vec![0.0; 2 * l + 2 * m];
        for j in 0..l {
            out[j] = dh.dv[j];
            out[l + j] = -dh.du[j];
        }
        for a in 0..m {
            for b in 0..m {
                for &(k, c) in self.spin_terms(a, b) {
                    out[2 * l + b] += c * dh.dt[a] * st.t[k];
                    out[2 * l + m + b] -= c * dh.ds[a] * st.s[k];
                }
            }
        }
        out
    }
}
