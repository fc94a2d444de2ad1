use nalgebra::DMatrix;

use crate::dynamics::eom_gcs;
use crate::error::{GcsError, Result};
use crate::liealg::{AlgebraElement, ChevalleyAlgebra, Representation};
use crate::phase::{x_coefficients, y_coefficients, GcsState, RootTrig};

use super::element::{check_poles, LaxElement, LaxMatrix};

fn ncoords(alg: &ChevalleyAlgebra) -> usize {
    2 * alg.rank() + 2 * alg.num_positive()
}

/// η = Σ v_j e_j + Σ_{α∈R} X_α E_α with analytic partials. The u-partials
/// use ∂X_{±α}/∂u_α = Y_α.
pub fn eta_lax(st: &GcsState, alg: &ChevalleyAlgebra, floor: f64) -> Result<LaxElement> {
    let trig = RootTrig::new(st, alg, floor)?;
    let x = x_coefficients(st, alg, &trig);
    let y = y_coefficients(st, &trig);
    let rs = alg.root_system();
    let (l, m) = (alg.rank(), alg.num_positive());
    let mut out = LaxElement::zero(alg, ncoords(alg));
    out.value = AlgebraElement::new(alg, st.v.clone(), x)?;
    for j in 0..l {
        out.partials[l + j].cartan[j] = 1.0;
    }
    for a in 0..m {
        let (u, sh) = (trig.ua[a], trig.sh[a]);
        let dt = &mut out.partials[2 * l + a];
        dt.roots[a] = (-u).exp() / sh;
        dt.roots[a + m] = u.exp() / sh;
        let ds = &mut out.partials[2 * l + m + a];
        ds.roots[a] = -1.0 / sh;
        ds.roots[a + m] = -1.0 / sh;
        for (j, c) in rs.coords(a).iter().enumerate() {
            out.partials[j].roots[a] += c * y[a];
            out.partials[j].roots[a + m] += c * y[a];
        }
    }
    Ok(out)
}

fn spin_lax(alg: &ChevalleyAlgebra, coeffs: &[f64], offset: usize) -> LaxElement {
    let m = alg.num_positive();
    let mut out = LaxElement::zero(alg, ncoords(alg));
    out.value = AlgebraElement::compact(alg, coeffs);
    for a in 0..m {
        out.partials[offset + a].roots[a] = 1.0;
        out.partials[offset + a].roots[a + m] = -1.0;
    }
    out
}

/// T = Σ T_α (E_α − E_{−α}).
pub fn t_lax(st: &GcsState, alg: &ChevalleyAlgebra) -> LaxElement {
    spin_lax(alg, &st.t, 2 * alg.rank())
}

/// S = Σ S_α (E_α − E_{−α}).
pub fn s_lax(st: &GcsState, alg: &ChevalleyAlgebra) -> LaxElement {
    spin_lax(alg, &st.s, 2 * alg.rank() + alg.num_positive())
}

/// M = Σ_{α∈R+} Y_α (E_α − E_{−α}), Y_α = (S_α cosh u_α − T_α)/sinh² u_α.
pub fn m_lax(st: &GcsState, alg: &ChevalleyAlgebra, floor: f64) -> Result<LaxElement> {
    let trig = RootTrig::new(st, alg, floor)?;
    let y = y_coefficients(st, &trig);
    let rs = alg.root_system();
    let (l, m) = (alg.rank(), alg.num_positive());
    let mut out = LaxElement::zero(alg, ncoords(alg));
    out.value = AlgebraElement::compact(alg, &y);
    let mut set = |p: usize, a: usize, c: f64| {
        out.partials[p].roots[a] += c;
        out.partials[p].roots[a + m] -= c;
    };
    for a in 0..m {
        let (t, s, sh, ch) = (st.t[a], st.s[a], trig.sh[a], trig.ch[a]);
        let sh2 = sh * sh;
        set(2 * l + a, a, -1.0 / sh2);
        set(2 * l + m + a, a, ch / sh2);
        let dy = (s * sh2 - 2.0 * ch * (s * ch - t)) / (sh2 * sh);
        for (j, c) in rs.coords(a).iter().enumerate() {
            set(j, a, c * dy);
        }
    }
    Ok(out)
}

/// Ad_{exp u} applied to a state-dependent element, E_α ↦ e^{u_α} E_α,
/// including the u-dependence of the torus factor in the partials.
pub fn ad_exp_u(lax: &LaxElement, st: &GcsState, alg: &ChevalleyAlgebra) -> LaxElement {
    let rs = alg.root_system();
    let l = alg.rank();
    let mut out = lax.clone();
    for b in 0..alg.num_roots() {
        let w = rs.pairing(b, &st.u).exp();
        let c = lax.value.roots[b];
        out.value.roots[b] = w * c;
        for (p, part) in out.partials.iter_mut().enumerate() {
            part.roots[b] *= w;
            if p < l {
                part.roots[b] += rs.coords(b)[p] * w * c;
            }
        }
    }
    out
}

/// L̃(y) = η + (1 + coth y) T, equal entrywise to
/// v + Σ_{β∈R} [(T_β e^{−u_β} − S_β)/sinh u_β + (1 + coth y) T_β] E_β.
pub fn lax_tilde(st: &GcsState, alg: &ChevalleyAlgebra, y: f64, floor: f64) -> Result<LaxElement> {
    let sh = y.sinh();
    if !(sh.abs() >= floor) {
        return Err(GcsError::Pole { x: y });
    }
    let eta = eta_lax(st, alg, floor)?;
    let t = t_lax(st, alg);
    Ok(LaxElement::combine(&[(1.0, &eta), (1.0 + y.cosh() / sh, &t)]).at(y))
}

/// L1(x) = T/x + (T + η)/(1 − x) and L2(x) = S/x + (S + Ad_{exp u}η)/(1 − x).
pub fn model1_lax(
    st: &GcsState,
    alg: &ChevalleyAlgebra,
    x: f64,
    floor: f64,
) -> Result<(LaxElement, LaxElement)> {
    check_poles(x, &[0.0, 1.0], floor)?;
    let eta = eta_lax(st, alg, floor)?;
    let (t, s) = (t_lax(st, alg), s_lax(st, alg));
    let ad_eta = ad_exp_u(&eta, st, alg);
    let (a, b) = (1.0 / x, 1.0 / (1.0 - x));
    let l1 = LaxElement::combine(&[(a + b, &t), (b, &eta)]).at(x);
    let l2 = LaxElement::combine(&[(a + b, &s), (b, &ad_eta)]).at(x);
    Ok((l1, l2))
}

/// ρ(η) with partials.
pub fn eta(st: &GcsState, alg: &ChevalleyAlgebra, rep: &Representation, floor: f64) -> Result<LaxMatrix> {
    Ok(eta_lax(st, alg, floor)?.to_matrix(rep))
}

/// ρ(M) with partials.
pub fn m_operator(
    st: &GcsState,
    alg: &ChevalleyAlgebra,
    rep: &Representation,
    floor: f64,
) -> Result<LaxMatrix> {
    Ok(m_lax(st, alg, floor)?.to_matrix(rep))
}

/// ρ(L̃(x)), the spectral Lax operator with (1 + coth x) T term.
pub fn spectral_lax_intro(
    st: &GcsState,
    alg: &ChevalleyAlgebra,
    rep: &Representation,
    x: f64,
    floor: f64,
) -> Result<LaxMatrix> {
    Ok(lax_tilde(st, alg, x, floor)?.to_matrix(rep))
}

/// (ρ(L1(x)), ρ(L2(x))).
pub fn spectral_lax_model1(
    st: &GcsState,
    alg: &ChevalleyAlgebra,
    rep: &Representation,
    x: f64,
    floor: f64,
) -> Result<(LaxMatrix, LaxMatrix)> {
    let (l1, l2) = model1_lax(st, alg, x, floor)?;
    Ok((l1.to_matrix(rep), l2.to_matrix(rep)))
}

fn commutator(a: &DMatrix<f64>, b: &DMatrix<f64>) -> DMatrix<f64> {
    a * b - b * a
}

/// ‖dη/dt − [η, M]‖_F / max(1, ‖η‖_F) with dη/dt assembled from the
/// equations of motion and the partials of η.
pub fn lax_residual(
    st: &GcsState,
    alg: &ChevalleyAlgebra,
    rep: &Representation,
    floor: f64,
) -> Result<f64> {
    let eta = eta(st, alg, rep, floor)?;
    let m = m_operator(st, alg, rep, floor)?;
    let rates = eom_gcs(st, alg, floor)?.to_flat();
    let lhs = eta.derivative(&rates);
    let rhs = commutator(&eta.value, &m.value);
    Ok((lhs - rhs).norm() / eta.value.norm().max(1.0))
}
