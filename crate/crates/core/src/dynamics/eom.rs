use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::liealg::ChevalleyAlgebra;
use crate::phase::{GcsState, RootTrig};

/// Time derivative (u̇, v̇, Ṫ, Ṡ) of a state.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateDerivative {
    pub du: Vec<f64>,
    pub dv: Vec<f64>,
    #[serde(rename = "dT")]
    pub dt: Vec<f64>,
    #[serde(rename = "dS")]
    pub ds: Vec<f64>,
}

impl StateDerivative {
    pub fn zeros(l: usize, m: usize) -> Self {
        Self {
            du: vec![0.0; l],
            dv: vec![0.0; l],
            dt: vec![0.0; m],
            ds: vec![0.0; m],
        }
    }

    pub fn to_flat(&self) -> Vec<f64> {
        let mut x = self.du.clone();
        x.extend(&self.dv);
        x.extend(&self.dt);
        x.extend(&self.ds);
        x
    }

    pub fn from_flat(l: usize, m: usize, x: &[f64]) -> Self {
        let st = GcsState::from_flat(l, m, x);
        Self {
            du: st.u,
            dv: st.v,
            dt: st.t,
            ds: st.s,
        }
    }

    /// Largest componentwise absolute difference.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.to_flat()
            .iter()
            .zip(other.to_flat())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Largest absolute component.
    pub fn max_abs(&self) -> f64 {
        self.to_flat().iter().map(|x| x.abs()).fold(0.0, f64::max)
    }
}

/// Per-root quantities over all of R with the odd extensions
/// T_{−α} = −T_α, S_{−α} = −S_α, u_{−α} = −u_α.
pub(crate) struct Extended {
    pub t: Vec<f64>,
    pub s: Vec<f64>,
    pub ch: Vec<f64>,
    pub sh2: Vec<f64>,
}

impl Extended {
    pub fn new(st: &GcsState, alg: &ChevalleyAlgebra, trig: &RootTrig) -> Self {
        let nr = alg.num_roots();
        let m = alg.num_positive();
        let mut e = Extended {
            t: vec![0.0; nr],
            s: vec![0.0; nr],
            ch: vec![0.0; nr],
            sh2: vec![0.0; nr],
        };
        for a in 0..m {
            for (k, sign) in [(a, 1.0), (a + m, -1.0)] {
                e.t[k] = sign * st.t[a];
                e.s[k] = sign * st.s[a];
                e.ch[k] = trig.ch[a];
                e.sh2[k] = trig.sh[a] * trig.sh[a];
            }
        }
        e
    }
}

/// Sign convention for the momentum equation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum MomentumSign {
    /// v̇ = −∂U/∂u, the gradient of the potential.
    Gradient,
    /// The expanded right-hand side exactly as printed, which carries the
    /// opposite overall sign.
    Printed,
}

fn momentum(st: &GcsState, alg: &ChevalleyAlgebra, trig: &RootTrig, sign: MomentumSign) -> Vec<f64> {
    let rs = alg.root_system();
    let mut dv = vec![0.0; alg.rank()];
    for a in 0..alg.num_positive() {
        let (t, s, sh, ch) = (st.t[a], st.s[a], trig.sh[a], trig.ch[a]);
        let bracket = s * t / sh + (s * s + t * t - 2.0 * ch * s * t) * ch / (sh * sh * sh);
        let coef = match sign {
            MomentumSign::Gradient => 4.0,
            MomentumSign::Printed => -4.0,
        } / rs.norm2_f64(a)
            * bracket;
        for (j, c) in rs.coords(a).iter().enumerate() {
            dv[j] += c * coef;
        }
    }
    dv
}

/// Spin equations in the antisymmetrized form with ½Σ over ordered
/// decompositions α+β = γ.
fn spin_rates(alg: &ChevalleyAlgebra, e: &Extended) -> (Vec<f64>, Vec<f64>) {
    let m = alg.num_positive();
    let mut dt = vec![0.0; m];
    let mut ds = vec![0.0; m];
    for g in 0..m {
        let (mut acc_s, mut acc_t) = (0.0, 0.0);
        for &(a, b) in alg.decompositions(g) {
            let c = alg.c(a, b) as f64;
            let (ia, ib) = (1.0 / e.sh2[a], 1.0 / e.sh2[b]);
            acc_s += c
                * (e.s[a] * e.s[b] * (ib - ia) + e.s[b] * e.t[a] * e.ch[a] * ia
                    - e.s[a] * e.t[b] * e.ch[b] * ib);
            acc_t += c
                * (e.t[a] * e.t[b] * (ia - ib) - e.t[b] * e.s[a] * e.ch[a] * ia
                    + e.t[a] * e.s[b] * e.ch[b] * ib);
        }
        ds[g] = 0.5 * acc_s;
        dt[g] = 0.5 * acc_t;
    }
    (dt, ds)
}

/// Equations of motion u̇ = v, v̇ = −∂U/∂u and the spin equations.
pub fn eom_gcs(st: &GcsState, alg: &ChevalleyAlgebra, floor: f64) -> Result<StateDerivative> {
    let trig = RootTrig::new(st, alg, floor)?;
    let e = Extended::new(st, alg, &trig);
    let (dt, ds) = spin_rates(alg, &e);
    Ok(StateDerivative {
        du: st.v.clone(),
        dv: momentum(st, alg, &trig, MomentumSign::Gradient),
        dt,
        ds,
    })
}

/// As [`eom_gcs`] but with the momentum equation's expanded right-hand side
/// taken literally. Used only to report the sign discrepancy.
pub fn eom_gcs_printed(st: &GcsState, alg: &ChevalleyAlgebra, floor: f64) -> Result<StateDerivative> {
    let mut d = eom_gcs(st, alg, floor)?;
    let trig = RootTrig::new(st, alg, floor)?;
    d.dv = momentum(st, alg, &trig, MomentumSign::Printed);
    Ok(d)
}

/// Equations of motion in the unsymmetrized form
/// Ṡ_α = Σ_{β+γ=α} C_{βγ} S_β (S_γ − T_γ cosh u_γ)/sinh² u_γ,
/// Ṫ_α = Σ_{β+γ=α} C_{βγ} T_β (S_γ cosh u_γ − T_γ)/sinh² u_γ and
/// v̇_j = Σ 4γ(j)/(γ,γ) ((S²+T²) cosh/sinh³ − ST(1+cosh²)/sinh³).
pub fn eom_intro_form(st: &GcsState, alg: &ChevalleyAlgebra, floor: f64) -> Result<StateDerivative> {
    let trig = RootTrig::new(st, alg, floor)?;
    let e = Extended::new(st, alg, &trig);
    let rs = alg.root_system();
    let (l, m) = (alg.rank(), alg.num_positive());
    let mut d = StateDerivative::zeros(l, m);
    d.du.clone_from(&st.v);
    for g in 0..m {
        for &(b, c) in alg.decompositions(g) {
            let k = alg.c(b, c) as f64;
            d.ds[g] += k * e.s[b] * (e.s[c] - e.t[c] * e.ch[c]) / e.sh2[c];
            d.dt[g] += k * e.t[b] * (e.s[c] * e.ch[c] - e.t[c]) / e.sh2[c];
        }
    }
    for a in 0..m {
        let (t, s, sh, ch) = (st.t[a], st.s[a], trig.sh[a], trig.ch[a]);
        let sh3 = sh * sh * sh;
        let coef = 4.0 / rs.norm2_f64(a)
            * ((s * s + t * t) * ch / sh3 - s * t * (1.0 + ch * ch) / sh3);
        for (j, x) in rs.coords(a).iter().enumerate() {
            d.dv[j] += x * coef;
        }
    }
    Ok(d)
}
