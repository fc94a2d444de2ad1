use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{GcsError, Result};
use crate::liealg::{AlgebraElement, ChevalleyAlgebra, Representation};
use crate::phase::{eta_cs, x_coefficients, GcsState, RootTrig};

use super::element::{check_poles, compact_defect, compact_part, LaxMatrix};
use super::operators::{eta_lax, spectral_lax_model1};

/// Tolerance on the compact-generator test for h = exp(ξ).
const GENERATOR_TOL: f64 = 1e-12;

/// Model II data (u, v, T, h) with h = exp(ξ) for a compact generator ξ.
/// The second spin is derived as S = Ad_h T.
#[derive(Clone, Debug)]
pub struct ModelII {
    /// Equivalent reduced state with S = Ad_h T.
    pub state: GcsState,
    pub h: DMatrix<f64>,
    pub h_inv: DMatrix<f64>,
}

impl ModelII {
    pub fn new(
        u: Vec<f64>,
        v: Vec<f64>,
        t: Vec<f64>,
        generator: &AlgebraElement<f64>,
        alg: &ChevalleyAlgebra,
        rep: &Representation,
    ) -> Result<Self> {
        let residual = compact_defect(generator, alg);
        if residual > GENERATOR_TOL {
            return Err(GcsError::NonCompactGenerator { residual });
        }
        let xi = rep.matrix(generator);
        let h = xi.clone().exp();
        let h_inv = (-xi).exp();
        let t_elem = AlgebraElement::compact(alg, &t);
        let s_mat = &h * rep.matrix(&t_elem) * &h_inv;
        let s_elem = rep.coefficients(alg, &s_mat);
        let s = s_elem.roots[..alg.num_positive()].to_vec();
        let state = GcsState::new(alg, u, v, t, s)?;
        Ok(Self { state, h, h_inv })
    }

    /// ρ(Ad_{h⁻¹ exp u} η) = ρ(h)⁻¹ ρ(Ad_{exp u} η) ρ(h).
    fn twisted_eta(&self, alg: &ChevalleyAlgebra, rep: &Representation, floor: f64) -> Result<(DMatrix<f64>, DMatrix<f64>)> {
        let eta = eta_lax(&self.state, alg, floor)?.value;
        let ad = eta.ad_torus(alg, &self.state.u);
        let twisted = &self.h_inv * rep.matrix(&ad) * &self.h;
        Ok((rep.matrix(&eta), twisted))
    }

    /// L^II(x) = η/x − (η − Ad_{h⁻¹ exp u} η)/(x − 1).
    pub fn lax(&self, alg: &ChevalleyAlgebra, rep: &Representation, x: f64, floor: f64) -> Result<LaxMatrix> {
        check_poles(x, &[0.0, 1.0], floor)?;
        let (eta, twisted) = self.twisted_eta(alg, rep, floor)?;
        let value = &eta / x - (&eta - twisted) / (x - 1.0);
        Ok(LaxMatrix {
            rep: rep.kind(),
            value,
            partials: Vec::new(),
            x: Some(x),
        })
    }

    /// ρ(h) L ρ(h)⁻¹.
    pub fn gauge(&self, l: &DMatrix<f64>) -> DMatrix<f64> {
        &self.h * l * &self.h_inv
    }

    /// ‖Ad_h L^II(x) − L2(x)‖_F / max(1, ‖L2(x)‖_F).
    pub fn gauge_residual(&self, alg: &ChevalleyAlgebra, rep: &Representation, x: f64, floor: f64) -> Result<f64> {
        let l = self.lax(alg, rep, x, floor)?;
        let (_, l2) = spectral_lax_model1(&self.state, alg, rep, x, floor)?;
        Ok((self.gauge(&l.value) - &l2.value).norm() / l2.value.norm().max(1.0))
    }

    /// Largest compact-part coefficient of η − Ad_{h⁻¹ exp u} η.
    pub fn moment_defect(&self, alg: &ChevalleyAlgebra, rep: &Representation, floor: f64) -> Result<f64> {
        let (eta, twisted) = self.twisted_eta(alg, rep, floor)?;
        let p = rep.coefficients(alg, &(eta - twisted));
        Ok(compact_part(&p, alg).iter().map(|x| x.abs()).fold(0.0, f64::max))
    }
}

/// Model III data (ũ, ṽ, P) with P given over all roots.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelIIIData {
    pub u: Vec<f64>,
    pub v: Vec<f64>,
    #[serde(rename = "P")]
    pub p: Vec<f64>,
}

impl ModelIIIData {
    fn check(&self, alg: &ChevalleyAlgebra, floor: f64) -> Result<Vec<f64>> {
        if self.u.len() != alg.rank() || self.v.len() != alg.rank() || self.p.len() != alg.num_roots() {
            return Err(GcsError::InvalidArgument("model III data has the wrong shape".into()));
        }
        let rs = alg.root_system();
        (0..alg.num_roots())
            .map(|a| {
                let d = 1.0 - rs.pairing(a, &self.u).exp();
                if !(d.abs() >= floor) {
                    return Err(GcsError::Singular {
                        what: format!("1 - exp(u_{})", rs.label(a)),
                        value: d.abs(),
                        floor,
                    });
                }
                Ok(d)
            })
            .collect()
    }

    /// P = Σ_{α∈R} P_α E_α.
    pub fn p_element(&self, alg: &ChevalleyAlgebra) -> AlgebraElement<f64> {
        let mut x = AlgebraElement::zero(alg);
        x.roots.copy_from_slice(&self.p);
        x
    }

    /// ς = ṽ + Σ_{α∈R} P_α/(1 − e^{ũ_α}) E_α.
    pub fn varsigma(&self, alg: &ChevalleyAlgebra, floor: f64) -> Result<AlgebraElement<f64>> {
        let d = self.check(alg, floor)?;
        let roots = self.p.iter().zip(&d).map(|(p, d)| p / d).collect();
        Ok(AlgebraElement::new(alg, self.v.clone(), roots)?)
    }

    /// Largest coefficient of ς − Ad_{exp ũ} ς − P.
    pub fn moment_residual(&self, alg: &ChevalleyAlgebra, floor: f64) -> Result<f64> {
        let s = self.varsigma(alg, floor)?;
        let r = &(&s - &s.ad_torus(alg, &self.u)) - &self.p_element(alg);
        Ok(r.to_vec().iter().map(|x| x.abs()).fold(0.0, f64::max))
    }
}

/// ũ = u, ṽ = v, P_α = (1 − e^{u_α}) X_α for every α ∈ R.
pub fn model3_map(st: &GcsState, alg: &ChevalleyAlgebra, floor: f64) -> Result<ModelIIIData> {
    let trig = RootTrig::new(st, alg, floor)?;
    let x = x_coefficients(st, alg, &trig);
    let rs = alg.root_system();
    let p = x
        .iter()
        .enumerate()
        .map(|(a, xa)| (1.0 - rs.pairing(a, &st.u).exp()) * xa)
        .collect();
    Ok(ModelIIIData {
        u: st.u.clone(),
        v: st.v.clone(),
        p,
    })
}

/// Inverse of [`model3_map`]: with X_α = P_α/(1 − e^{u_α}),
/// T_α = (X_{−α} − X_α)/2 and S_α = T_α e^{−u_α} − X_α sinh u_α.
pub fn model3_inverse(d: &ModelIIIData, alg: &ChevalleyAlgebra, floor: f64) -> Result<GcsState> {
    let x = d.varsigma(alg, floor)?.roots;
    let rs = alg.root_system();
    let m = alg.num_positive();
    let mut t = vec![0.0; m];
    let mut s = vec![0.0; m];
    for a in 0..m {
        let ua = rs.pairing(a, &d.u);
        t[a] = 0.5 * (x[a + m] - x[a]);
        s[a] = t[a] * (-ua).exp() - x[a] * ua.sinh();
    }
    GcsState::new(alg, d.u.clone(), d.v.clone(), t, s)
}

/// L^III(x) = ς/x − P/(x − 1).
pub fn spectral_lax_model3(
    d: &ModelIIIData,
    alg: &ChevalleyAlgebra,
    rep: &Representation,
    x: f64,
    floor: f64,
) -> Result<LaxMatrix> {
    check_poles(x, &[0.0, 1.0], floor)?;
    let s = rep.matrix(&d.varsigma(alg, floor)?);
    let p = rep.matrix(&d.p_element(alg));
    Ok(LaxMatrix {
        rep: rep.kind(),
        value: s / x - p / (x - 1.0),
        partials: Vec::new(),
        x: Some(x),
    })
}

/// L^CS(z) = η^CS/z − S̃/(z − 1).
pub fn spectral_lax_cs(
    u: &[f64],
    v: &[f64],
    scs: &AlgebraElement<f64>,
    alg: &ChevalleyAlgebra,
    rep: &Representation,
    z: f64,
    floor: f64,
) -> Result<LaxMatrix> {
    check_poles(z, &[0.0, 1.0], floor)?;
    let eta = rep.matrix(&eta_cs(u, v, scs, alg, floor)?);
    let s = rep.matrix(scs);
    Ok(LaxMatrix {
        rep: rep.kind(),
        value: eta / z - s / (z - 1.0),
        partials: Vec::new(),
        x: Some(z),
    })
}

/// Largest coefficient of η^CS − Ad_{exp u} η^CS − S̃.
pub fn cs_moment_residual(
    u: &[f64],
    v: &[f64],
    scs: &AlgebraElement<f64>,
    alg: &ChevalleyAlgebra,
    floor: f64,
) -> Result<f64> {
    let eta = eta_cs(u, v, scs, alg, floor)?;
    let r = &(&eta - &eta.ad_torus(alg, u)) - scs;
    Ok(r.to_vec().iter().map(|x| x.abs()).fold(0.0, f64::max))
}
