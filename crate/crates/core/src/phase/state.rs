use serde::{Deserialize, Serialize};

use crate::error::{GcsError, LieError, Result};
use crate::liealg::{AlgebraElement, ChevalleyAlgebra};

/// Default floor below which |sinh(α(u))| is treated as a wall.
pub const SINGULAR_FLOOR: f64 = 1e-12;

/// Phase-space point (u, v, T, S) of the reduced system.
///
/// `u`, `v` are coordinates in the orthonormal Cartan basis, `t` and `s`
/// are the spin coefficients over the positive roots in enumeration order.
/// Flattened coordinates follow the order [u, v, T, S].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GcsState {
    pub u: Vec<f64>,
    pub v: Vec<f64>,
    #[serde(rename = "T")]
    pub t: Vec<f64>,
    #[serde(rename = "S")]
    pub s: Vec<f64>,
}

impl GcsState {
    pub fn new(
        alg: &ChevalleyAlgebra,
        u: Vec<f64>,
        v: Vec<f64>,
        t: Vec<f64>,
        s: Vec<f64>,
    ) -> Result<Self> {
        let st = Self { u, v, t, s };
        st.check_shape(alg)?;
        Ok(st)
    }

    pub fn zeros(alg: &ChevalleyAlgebra) -> Self {
        let (l, m) = (alg.rank(), alg.num_positive());
        Self {
            u: vec![0.0; l],
            v: vec![0.0; l],
            t: vec![0.0; m],
            s: vec![0.0; m],
        }
    }

    pub fn check_shape(&self, alg: &ChevalleyAlgebra) -> Result<()> {
        let (l, m) = (alg.rank(), alg.num_positive());
        for (what, len, expected) in [
            ("u", self.u.len(), l),
            ("v", self.v.len(), l),
            ("T", self.t.len(), m),
            ("S", self.s.len(), m),
        ] {
            if len != expected {
                return Err(LieError::DimensionMismatch {
                    what,
                    expected,
                    found: len,
                }
                .into());
            }
        }
        Ok(())
    }

    /// Number of flattened coordinates 2l + 2|R+|.
    pub fn dim(&self) -> usize {
        2 * self.u.len() + 2 * self.t.len()
    }

    pub fn to_flat(&self) -> Vec<f64> {
        let mut x = Vec::with_capacity(self.dim());
        x.extend(&self.u);
        x.extend(&self.v);
        x.extend(&self.t);
        x.extend(&self.s);
        x
    }

    pub fn from_flat(l: usize, m: usize, x: &[f64]) -> Self {
        Self {
            u: x[..l].to_vec(),
            v: x[l..2 * l].to_vec(),
            t: x[2 * l..2 * l + m].to_vec(),
            s: x[2 * l + m..2 * l + 2 * m].to_vec(),
        }
    }

    /// Coordinate k in flattened order.
    pub fn coord(&self, k: usize) -> f64 {
        let (l, m) = (self.u.len(), self.t.len());
        if k < l {
            self.u[k]
        } else if k < 2 * l {
            self.v[k - l]
        } else if k < 2 * l + m {
            self.t[k - 2 * l]
        } else {
            self.s[k - 2 * l - m]
        }
    }

    pub fn coord_mut(&mut self, k: usize) -> &mut f64 {
        let (l, m) = (self.u.len(), self.t.len());
        if k < l {
            &mut self.u[k]
        } else if k < 2 * l {
            &mut self.v[k - l]
        } else if k < 2 * l + m {
            &mut self.t[k - 2 * l]
        } else {
            &mut self.s[k - 2 * l - m]
        }
    }

    /// T_α for any root, extended by T_{−α} = −T_α.
    pub fn t_root(&self, alg: &ChevalleyAlgebra, a: usize) -> f64 {
        let m = alg.num_positive();
        if a < m {
            self.t[a]
        } else {
            -self.t[a - m]
        }
    }

    /// S_α for any root, extended by S_{−α} = −S_α.
    pub fn s_root(&self, alg: &ChevalleyAlgebra, a: usize) -> f64 {
        let m = alg.num_positive();
        if a < m {
            self.s[a]
        } else {
            -self.s[a - m]
        }
    }

    /// u_α = α(u).
    pub fn u_root(&self, alg: &ChevalleyAlgebra, a: usize) -> f64 {
        alg.root_system().pairing(a, &self.u)
    }

    /// Smallest |sinh(u_α)| over the positive roots.
    pub fn min_wall_distance(&self, alg: &ChevalleyAlgebra) -> f64 {
        alg.root_system()
            .positive()
            .map(|a| self.u_root(alg, a).sinh().abs())
            .fold(f64::INFINITY, f64::min)
    }

    /// Fails when some |sinh(u_α)| is below `floor`.
    pub fn check_regular(&self, alg: &ChevalleyAlgebra, floor: f64) -> Result<()> {
        let rs = alg.root_system();
        for a in rs.positive() {
            let sh = self.u_root(alg, a).sinh();
            if !(sh.abs() >= floor) {
                return Err(GcsError::Singular {
                    what: format!("u_{}", rs.label(a)),
                    value: sh.abs(),
                    floor,
                });
            }
        }
        Ok(())
    }

    /// T = Σ_{α∈R+} T_α (E_α − E_{−α}).
    pub fn t_element(&self, alg: &ChevalleyAlgebra) -> AlgebraElement<f64> {
        AlgebraElement::compact(alg, &self.t)
    }

    /// S = Σ_{α∈R+} S_α (E_α − E_{−α}).
    pub fn s_element(&self, alg: &ChevalleyAlgebra) -> AlgebraElement<f64> {
        AlgebraElement::compact(alg, &self.s)
    }

    /// Maps the state through the involution (u,v,T,S) ↦ (−u,−v,−S,−T).
    pub fn involution(&self) -> Self {
        let neg = |x: &[f64]| x.iter().map(|y| -y).collect();
        Self {
            u: neg(&self.u),
            v: neg(&self.v),
            t: neg(&self.s),
            s: neg(&self.t),
        }
    }
}

/// Per-root trigonometric data at a regular state.
#[derive(Clone, Debug)]
pub struct RootTrig {
    pub ua: Vec<f64>,
    pub sh: Vec<f64>,
    pub ch: Vec<f64>,
}

impl RootTrig {
    /// Evaluates u_α, sinh u_α and cosh u_α for every positive root.
    pub fn new(st: &GcsState, alg: &ChevalleyAlgebra, floor: f64) -> Result<Self> {
        st.check_regular(alg, floor)?;
        let m = alg.num_positive();
        let ua: Vec<f64> = (0..m).map(|a| st.u_root(alg, a)).collect();
        Ok(Self {
            sh: ua.iter().map(|x| x.sinh()).collect(),
            ch: ua.iter().map(|x| x.cosh()).collect(),
            ua,
        })
    }
}

/// X_{±α} = (T_α e^{∓u_α} − S_α)/sinh(u_α), returned over all roots.
pub fn x_coefficients(st: &GcsState, alg: &ChevalleyAlgebra, trig: &RootTrig) -> Vec<f64> {
    let m = alg.num_positive();
    let mut x = vec![0.0; 2 * m];
    for a in 0..m {
        let (t, s, u, sh) = (st.t[a], st.s[a], trig.ua[a], trig.sh[a]);
        x[a] = (t * (-u).exp() - s) / sh;
        x[a + m] = (t * u.exp() - s) / sh;
    }
    x
}

/// Y_α = (S_α cosh u_α − T_α)/sinh² u_α over the positive roots.
pub fn y_coefficients(st: &GcsState, trig: &RootTrig) -> Vec<f64> {
    (0..st.t.len())
        .map(|a| (st.s[a] * trig.ch[a] - st.t[a]) / (trig.sh[a] * trig.sh[a]))
        .collect()
}

/// η = Σ v_j e_j + Σ_{α∈R} X_α E_α.
pub fn eta_element(st: &GcsState, alg: &ChevalleyAlgebra, floor: f64) -> Result<AlgebraElement<f64>> {
    let trig = RootTrig::new(st, alg, floor)?;
    let x = x_coefficients(st, alg, &trig);
    Ok(AlgebraElement::new(alg, st.v.clone(), x)?)
}
