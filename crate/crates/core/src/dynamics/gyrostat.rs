use crate::error::{GcsError, Result};
use crate::liealg::ChevalleyAlgebra;
use crate::phase::{GcsState, RootTrig};

/// Inverse inertia f and rotator moment g of a gyrostat, indexed over all
/// roots, with f even and g odd under ν ↦ −ν.
#[derive(Clone, Debug, PartialEq)]
pub struct GyrostatSpec {
    pub f: Vec<f64>,
    pub g: Vec<f64>,
}

impl GyrostatSpec {
    /// Checks lengths and the parity conditions f(−ν) = f(ν), g(−ν) = −g(ν).
    pub fn validate(&self, alg: &ChevalleyAlgebra) -> Result<()> {
        let nr = alg.num_roots();
        if self.f.len() != nr || self.g.len() != nr {
            return Err(GcsError::InvalidArgument(format!(
                "gyrostat data must be given over all {nr} roots"
            )));
        }
        let rs = alg.root_system();
        for a in rs.positive() {
            let n = rs.neg(a);
            let tol = 1e-12 * (1.0 + self.f[a].abs() + self.g[a].abs());
            if (self.f[a] - self.f[n]).abs() > tol || (self.g[a] + self.g[n]).abs() > tol {
                return Err(GcsError::InvalidArgument(format!(
                    "parity condition violated at root {}",
                    rs.label(a)
                )));
            }
        }
        Ok(())
    }

    /// f(ν) = 4/((ν,ν) sinh² u_ν) and g(ν) = −4 W_ν cosh u_ν/((ν,ν) sinh² u_ν)
    /// where W is the other spin (S for the T equation, T for the S equation).
    fn from_state(st: &GcsState, alg: &ChevalleyAlgebra, floor: f64, other: &[f64]) -> Result<Self> {
        let trig = RootTrig::new(st, alg, floor)?;
        let rs = alg.root_system();
        let m = alg.num_positive();
        let nr = alg.num_roots();
        let mut f = vec![0.0; nr];
        let mut g = vec![0.0; nr];
        for a in 0..m {
            let sh2 = trig.sh[a] * trig.sh[a];
            let n2 = rs.norm2_f64(a);
            f[a] = 4.0 / (n2 * sh2);
            f[a + m] = f[a];
            g[a] = -4.0 * other[a] * trig.ch[a] / (n2 * sh2);
            g[a + m] = -g[a];
        }
        Ok(Self { f, g })
    }

    /// Data whose gyrostat equation reproduces the T-spin equation.
    pub fn for_t(st: &GcsState, alg: &ChevalleyAlgebra, floor: f64) -> Result<Self> {
        Self::from_state(st, alg, floor, &st.s)
    }

    /// Data whose gyrostat equation reproduces the S-spin equation.
    pub fn for_s(st: &GcsState, alg: &ChevalleyAlgebra, floor: f64) -> Result<Self> {
        Self::from_state(st, alg, floor, &st.t)
    }
}

fn extend(x: &[f64]) -> Vec<f64> {
    x.iter().copied().chain(x.iter().map(|y| -y)).collect()
}

fn rhs(w: &[f64], spec: &GyrostatSpec, alg: &ChevalleyAlgebra, sign: f64) -> Result<Vec<f64>> {
    spec.validate(alg)?;
    let rs = alg.root_system();
    let m = alg.num_positive();
    if w.len() != m {
        return Err(GcsError::InvalidArgument(format!(
            "spin vector must have length {m}"
        )));
    }
    let we = extend(w);
    let n2: Vec<f64> = (0..alg.num_roots()).map(|a| rs.norm2_f64(a)).collect();
    let mut out = vec![0.0; m];
    for (g, o) in out.iter_mut().enumerate() {
        let mut acc = 0.0;
        for &(a, b) in alg.decompositions(g) {
            let c = alg.c(a, b) as f64;
            acc += c
                * (we[a] * we[b] * (n2[a] * spec.f[a] - n2[b] * spec.f[b])
                    - (we[a] * n2[b] * spec.g[b] - we[b] * n2[a] * spec.g[a]));
        }
        // Each unordered pair {α,β} appears twice among ordered decompositions
        // with equal contributions, so ¼Σ over pairs is ⅛Σ over ordered ones.
        *o = sign * acc / 8.0;
    }
    Ok(out)
}

/// Gyrostat equation Ṫ_γ = ¼ Σ_{α+β=γ} C_{αβ}[T_αT_β(α²f(α)−β²f(β))
/// − (T_α β²g(β) − T_β α²g(α))], summed over unordered pairs.
pub fn gyrostat_rhs(t: &[f64], spec: &GyrostatSpec, alg: &ChevalleyAlgebra) -> Result<Vec<f64>> {
    rhs(t, spec, alg, 1.0)
}

/// Companion equation for the second spin, with the overall sign reversed.
pub fn gyrostat_rhs_s(s: &[f64], spec: &GyrostatSpec, alg: &ChevalleyAlgebra) -> Result<Vec<f64>> {
    rhs(s, spec, alg, -1.0)
}
