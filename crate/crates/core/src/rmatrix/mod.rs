//! The spectral classical r-matrix, the linear r-matrix bracket of the Lax
//! operator L̃ and the M-operator trace formula.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{GcsError, LieError, Result};
use crate::lax::{lax_tilde, m_lax};
use crate::liealg::{ChevalleyAlgebra, Family, RepKind, Representation};
use crate::phase::{GcsState, PoissonStructure};

/// Which roots the E_α ⊗ E_{∓α} sums of the r-matrix run over.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RootRange {
    /// Every α ∈ R, with coth(u_{−α}) = −coth(u_α).
    #[default]
    AllRoots,
    /// Only α ∈ R+.
    PositiveRoots,
}

/// r₁₂(x, y) realized in ρ ⊗ ρ. Row index (a, c) ↦ a·n + c and column
/// index (b, d) ↦ b·n + d.
#[derive(Clone, Debug)]
pub struct RMatrix {
    pub value: DMatrix<f64>,
    pub x: f64,
    pub y: f64,
    pub n: usize,
}

/// Entries {L̃(x)_ab, L̃(y)_cd} in the same index layout as [`RMatrix`].
#[derive(Clone, Debug)]
pub struct BracketTensor {
    pub value: DMatrix<f64>,
    pub x: f64,
    pub y: f64,
}

fn coth_checked(z: f64, floor: f64) -> Result<f64> {
    let sh = z.sinh();
    if !(sh.abs() >= floor) {
        return Err(GcsError::Pole { x: z });
    }
    Ok(z.cosh() / sh)
}

/// r₁₂(x,y) = ½(coth(x−y) + coth(x+y)) Σ_i e_i⊗e_i
/// + ½ Σ_α ((α,α)/2) E_α⊗E_{−α} (coth(x−y) + coth u_α)
/// + ½ Σ_α ((α,α)/2) E_α⊗E_α (coth(x+y) + coth u_α).
pub fn build_r(
    st: &GcsState,
    alg: &ChevalleyAlgebra,
    rep: &Representation,
    x: f64,
    y: f64,
    range: RootRange,
    floor: f64,
) -> Result<RMatrix> {
    st.check_regular(alg, floor)?;
    let rs = alg.root_system();
    let (cm, cp) = (coth_checked(x - y, floor)?, coth_checked(x + y, floor)?);
    let n = rep.dim();
    let mut r = DMatrix::zeros(n * n, n * n);
    for j in 0..alg.rank() {
        let e = rep.cartan(j);
        r += e.kronecker(e) * (0.5 * (cm + cp));
    }
    let roots: Vec<usize> = match range {
        RootRange::AllRoots => (0..alg.num_roots()).collect(),
        RootRange::PositiveRoots => rs.positive().collect(),
    };
    for a in roots {
        let cu = 1.0 / st.u_root(alg, a).tanh();
        let w = 0.5 * rs.norm2_f64(a) / 2.0;
        let ea = rep.root(a);
        r += ea.kronecker(rep.root(rs.neg(a))) * (w * (cm + cu));
        r += ea.kronecker(ea) * (w * (cp + cu));
    }
    Ok(RMatrix { value: r, x, y, n })
}

/// Σ_{p,q} {x_p, x_q} ∂_pL̃(x) ⊗ ∂_qL̃(y).
pub fn bracket_tensor(
    st: &GcsState,
    alg: &ChevalleyAlgebra,
    rep: &Representation,
    x: f64,
    y: f64,
    floor: f64,
) -> Result<BracketTensor> {
    let lx = lax_tilde(st, alg, x, floor)?.to_matrix(rep);
    let ly = lax_tilde(st, alg, y, floor)?.to_matrix(rep);
    let p = PoissonStructure::new(alg).tensor(st);
    let n = rep.dim();
    let mut out = DMatrix::zeros(n * n, n * n);
    for (i, dx) in lx.partials.iter().enumerate() {
        let mut w = DMatrix::zeros(n, n);
        for (j, dy) in ly.partials.iter().enumerate() {
            let c = p[(i, j)];
            if c != 0.0 {
                w += dy * c;
            }
        }
        if w.iter().any(|v| *v != 0.0) {
            out += dx.kronecker(&w);
        }
    }
    Ok(BracketTensor { value: out, x, y })
}

/// The factor swap Π on ρ ⊗ ρ.
pub fn swap_operator(n: usize) -> DMatrix<f64> {
    let mut p = DMatrix::zeros(n * n, n * n);
    for a in 0..n {
        for c in 0..n {
            p[(a * n + c, c * n + a)] = 1.0;
        }
    }
    p
}

/// Residual ‖{L̃₁(x), L̃₂(y)} − ([L₁, r₁₂(x,y)] − [L₂, r₂₁(y,x)])‖_F divided
/// by max(1, ‖{L̃₁, L̃₂}‖_F), where L₁ = ρ(L̃(x)) ⊗ 1, L₂ = 1 ⊗ ρ(L̃(y)) and
/// r₂₁(y,x) = Π r₁₂(y,x) Π.
pub fn verify_rmatrix_identity(
    st: &GcsState,
    alg: &ChevalleyAlgebra,
    rep: &Representation,
    x: f64,
    y: f64,
    range: RootRange,
    floor: f64,
) -> Result<f64> {
    let n = rep.dim();
    let id = DMatrix::<f64>::identity(n, n);
    let lx = rep.matrix(&lax_tilde(st, alg, x, floor)?.value);
    let ly = rep.matrix(&lax_tilde(st, alg, y, floor)?.value);
    let l1 = lx.kronecker(&id);
    let l2 = id.kronecker(&ly);
    let r12 = build_r(st, alg, rep, x, y, range, floor)?.value;
    let swap = swap_operator(n);
    let r21 = &swap * build_r(st, alg, rep, y, x, range, floor)?.value * &swap;
    let rhs = (&l1 * &r12 - &r12 * &l1) - (&l2 * &r21 - &r21 * &l2);
    let lhs = bracket_tensor(st, alg, rep, x, y, floor)?.value;
    Ok((&lhs - rhs).norm() / lhs.norm().max(1.0))
}

/// tr₂ of an operator on ρ ⊗ ρ.
pub fn partial_trace_second(t: &DMatrix<f64>, n: usize) -> DMatrix<f64> {
    DMatrix::from_fn(n, n, |a, b| (0..n).map(|c| t[(a * n + c, b * n + c)]).sum())
}

/// Residual ‖tr₂(r₁₂(x,y) L₂(y))/c_ρ − [½(coth(x−y) + coth(x+y)) L̃(x) − M]‖_F
/// divided by max(1, ‖L̃(x)‖_F). Supported for the defining representation of
/// A-type algebras.
pub fn verify_m_trace(
    st: &GcsState,
    alg: &ChevalleyAlgebra,
    rep: &Representation,
    x: f64,
    y: f64,
    floor: f64,
) -> Result<f64> {
    if rep.kind() != RepKind::Defining || alg.root_system().family() != Family::A {
        return Err(LieError::UnsupportedRepresentation {
            rep: rep.kind().to_string(),
            algebra: alg.tag().to_string(),
        }
        .into());
    }
    let n = rep.dim();
    let id = DMatrix::<f64>::identity(n, n);
    let r12 = build_r(st, alg, rep, x, y, RootRange::AllRoots, floor)?.value;
    let ly = rep.matrix(&lax_tilde(st, alg, y, floor)?.value);
    let lhs = partial_trace_second(&(r12 * id.kronecker(&ly)), n) / rep.index_f64();
    let lx = rep.matrix(&lax_tilde(st, alg, x, floor)?.value);
    let m = rep.matrix(&m_lax(st, alg, floor)?.value);
    let c = 0.5 * (coth_checked(x - y, floor)? + coth_checked(x + y, floor)?);
    let rhs = &lx * c - m;
    Ok((lhs - rhs).norm() / lx.norm().max(1.0))
}

/// |{tr ρ(L̃(x))^j, tr ρ(L̃(y))^k}| from analytic trace gradients.
pub fn spectral_trace_bracket(
    st: &GcsState,
    alg: &ChevalleyAlgebra,
    rep: &Representation,
    (x, j): (f64, u32),
    (y, k): (f64, u32),
    floor: f64,
) -> Result<f64> {
    let (l, m) = (alg.rank(), alg.num_positive());
    let gx = lax_tilde(st, alg, x, floor)?.to_matrix(rep).trace_power_gradient(j);
    let gy = lax_tilde(st, alg, y, floor)?.to_matrix(rep).trace_power_gradient(k);
    let ps = PoissonStructure::new(alg);
    Ok(ps.bracket_gradients(
        st,
        &crate::phase::Gradient::from_flat(l, m, &gx),
        &crate::phase::Gradient::from_flat(l, m, &gy),
    ))
}
