use std::collections::BTreeMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::dynamics::{
    eom_gcs, eom_gcs_printed, eom_intro_form, gyrostat_rhs, gyrostat_rhs_s, hamiltonian_flow_oracle,
    integrate, GyrostatSpec, IntegratorConfig, StateDerivative,
};
use crate::error::{GcsError, Result};
use crate::invariants::InvariantSet;
use crate::lax::{
    integral_counts, integrals, lax_residual, model3_inverse, model3_map, spectral_lax_model1,
    trig_identity_residuals, IntegralFunction, ModelII,
};
use crate::liealg::{AlgebraElement, ChevalleyAlgebra, Family, RepKind, Representation};
use crate::phase::{
    resolve_cs_kappa, CasimirFunction, Coordinate, GcsHamiltonian, GcsState,
    Gradient, PhaseFunction, PoissonStructure, SINGULAR_FLOOR,
};
use crate::rmatrix::{spectral_trace_bracket, verify_m_trace, verify_rmatrix_identity, RootRange};
use crate::sampling::{random_state, rng, spectral_point, SampleConfig};

use super::format::{max_residual, median};
use super::{AlgebraInfo, CliError, CONVENTION};

/// Property suites available to `gcs verify`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Jacobi,
    Constants,
    Lax,
    EomCrosscheck,
    Gyrostat,
    Rmatrix,
    MTrace,
    Involutivity,
    Casimir,
    Counts,
    Trig,
    ModelMaps,
    Bc1,
}

impl Suite {
    pub const ALL: [Suite; 13] = [
        Suite::Jacobi,
        Suite::Constants,
        Suite::Lax,
        Suite::EomCrosscheck,
        Suite::Gyrostat,
        Suite::Rmatrix,
        Suite::MTrace,
        Suite::Involutivity,
        Suite::Casimir,
        Suite::Counts,
        Suite::Trig,
        Suite::ModelMaps,
        Suite::Bc1,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Jacobi => "jacobi",
            Suite::Constants => "constants",
            Suite::Lax => "lax",
            Suite::EomCrosscheck => "eom-crosscheck",
            Suite::Gyrostat => "gyrostat",
            Suite::Rmatrix => "rmatrix",
            Suite::MTrace => "m-trace",
            Suite::Involutivity => "involutivity",
            Suite::Casimir => "casimir",
            Suite::Counts => "counts",
            Suite::Trig => "trig",
            Suite::ModelMaps => "model-maps",
            Suite::Bc1 => "bc1",
        }
    }

    pub fn default_tol(self) -> f64 {
        match self {
            Suite::Jacobi | Suite::Constants | Suite::Counts => 0.0,
            Suite::Lax => 1e-10,
            Suite::Rmatrix | Suite::MTrace => 1e-9,
            Suite::Involutivity | Suite::Bc1 => 1e-8,
            Suite::EomCrosscheck
            | Suite::Gyrostat
            | Suite::Casimir
            | Suite::Trig
            | Suite::ModelMaps => 1e-12,
        }
    }

    pub fn default_samples(self) -> usize {
        match self {
            Suite::Jacobi | Suite::Constants | Suite::Counts => 1,
            Suite::Trig => 1000,
            Suite::Bc1 => 3,
            Suite::Involutivity => 20,
            _ => 100,
        }
    }

    /// Exact suites ignore the sample count and the seed.
    pub fn is_exact(self) -> bool {
        matches!(self, Suite::Jacobi | Suite::Constants | Suite::Counts)
    }
}

/// One randomized input of a suite: a phase-space point and scalar
/// parameters such as spectral arguments.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub state: Option<GcsState>,
    #[serde(default)]
    pub params: Vec<f64>,
}

/// A named residual. Non-gating components are reported but do not
/// decide pass or fail.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Component {
    pub name: &'static str,
    pub value: f64,
    pub gating: bool,
}

fn gate(name: &'static str, value: f64) -> Component {
    Component { name, value, gating: true }
}

fn info(name: &'static str, value: f64) -> Component {
    Component { name, value, gating: false }
}

/// Everything needed to replay one sample.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub suite: Suite,
    pub family: Family,
    pub rank: usize,
    pub rep: RepKind,
    pub seed: u64,
    pub index: usize,
    pub tol: f64,
    pub residual: f64,
    pub sample: Sample,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComponentSummary {
    pub max: f64,
    pub median: f64,
    pub gating: bool,
}

/// Result of one suite run.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub algebra: AlgebraInfo,
    pub seed: u64,
    pub samples: usize,
    pub tol: f64,
    pub passed: bool,
    pub max: f64,
    pub median: f64,
    pub components: BTreeMap<String, ComponentSummary>,
    pub residuals: Vec<f64>,
    pub notes: Vec<String>,
    pub kappa: f64,
    pub convention: &'static str,
    pub counterexample: Option<Counterexample>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_seconds: Option<f64>,
}

/// Inputs of a suite run.
#[derive(Clone, Debug, PartialEq)]
pub struct SuiteParams {
    pub suite: Suite,
    pub family: Family,
    pub rank: usize,
    pub rep: Option<RepKind>,
    pub seed: u64,
    pub tol: Option<f64>,
    pub samples: Option<usize>,
}

impl SuiteParams {
    pub fn new(suite: Suite, family: Family, rank: usize) -> Self {
        Self {
            suite,
            family,
            rank,
            rep: None,
            seed: 0,
            tol: None,
            samples: None,
        }
    }
}

/// Algebra, representation and invariants shared by every sample.
pub struct SuiteContext {
    pub alg: ChevalleyAlgebra,
    pub rep: Representation,
    pub inv: InvariantSet,
    pub floor: f64,
}

impl SuiteContext {
    pub fn new(family: Family, rank: usize, rep: Option<RepKind>) -> std::result::Result<Self, CliError> {
        let alg = ChevalleyAlgebra::build(family, rank).map_err(|e| CliError::Config(e.to_string()))?;
        let kind = rep.unwrap_or(if family.is_classical() {
            RepKind::Defining
        } else {
            RepKind::Adjoint
        });
        let rep = Representation::new(&alg, kind).map_err(|e| CliError::Config(e.to_string()))?;
        let inv = InvariantSet::new(&alg, rep.clone()).map_err(|e| CliError::Config(e.to_string()))?;
        Ok(Self {
            alg,
            rep,
            inv,
            floor: SINGULAR_FLOOR,
        })
    }
}

/// Spectral pair with x, y, x − y and x + y at least 0.2 from zero.
fn spectral_pair<R: Rng>(r: &mut R) -> (f64, f64) {
    loop {
        let x: f64 = r.random_range(-2.0..2.0);
        let y: f64 = r.random_range(-2.0..2.0);
        if [x, y, x - y, x + y].iter().all(|z| z.abs() > 0.2) {
            return (x, y);
        }
    }
}

fn draw<R: Rng>(suite: Suite, ctx: &SuiteContext, r: &mut R) -> Sample {
    let alg = &ctx.alg;
    let state = |r: &mut R| Some(random_state(alg, r, &SampleConfig::default()));
    match suite {
        Suite::Jacobi | Suite::Constants | Suite::Counts => Sample::default(),
        Suite::Trig => loop {
            let (x, y): (f64, f64) = (r.random_range(-3.0..3.0), r.random_range(-3.0..3.0));
            if x.abs() >= 0.1 && y.abs() >= 0.1 && (x + y).abs() >= 0.1 {
                break Sample { state: None, params: vec![x, y] };
            }
        },
        Suite::Rmatrix | Suite::MTrace | Suite::Involutivity => {
            let st = state(r);
            let (x, y) = spectral_pair(r);
            Sample { state: st, params: vec![x, y] }
        }
        Suite::ModelMaps => {
            let st = state(r);
            let x = spectral_point(r, -3.0, 3.0, &[0.0, 1.0], 0.05);
            let mut params = vec![x];
            params.extend((0..alg.num_positive()).map(|_| r.random_range(-1.0..1.0)));
            Sample { state: st, params }
        }
        Suite::Bc1 => {
            let cfg = SampleConfig {
                wall_margin: 0.5,
                ..Default::default()
            };
            let mut st = random_state(alg, r, &cfg);
            st.t.iter_mut().chain(st.s.iter_mut()).for_each(|x| *x *= 0.5);
            Sample { state: Some(st), params: Vec::new() }
        }
        Suite::Lax | Suite::EomCrosscheck | Suite::Gyrostat | Suite::Casimir => Sample {
            state: state(r),
            params: Vec::new(),
        },
    }
}

fn scaled_diff(a: &StateDerivative, b: &StateDerivative) -> f64 {
    a.max_abs_diff(b) / a.max_abs().max(1.0)
}

fn norm(g: &Gradient) -> f64 {
    g.to_flat().iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn exact(name: &'static str, outcome: std::result::Result<(), String>, notes: &mut Vec<String>) -> Component {
    match outcome {
        Ok(()) => gate(name, 0.0),
        Err(msg) => {
            notes.push(format!("{name}: {msg}"));
            gate(name, 1.0)
        }
    }
}

fn need_state(s: &Sample) -> Result<&GcsState> {
    s.state
        .as_ref()
        .ok_or_else(|| GcsError::InvalidArgument("sample has no state".into()))
}

fn need_params(s: &Sample, n: usize) -> Result<&[f64]> {
    if s.params.len() < n {
        return Err(GcsError::InvalidArgument(format!("sample needs {n} parameters")));
    }
    Ok(&s.params)
}

/// Residual components of one sample.
pub fn evaluate(suite: Suite, ctx: &SuiteContext, sample: &Sample, notes: &mut Vec<String>) -> Result<Vec<Component>> {
    let (alg, rep, floor) = (&ctx.alg, &ctx.rep, ctx.floor);
    Ok(match suite {
        Suite::Jacobi => {
            let mut report = Default::default();
            vec![
                exact("jacobi", alg.check_jacobi(&mut report), notes),
                exact("killing_invariance", alg.check_killing_invariance(&mut report), notes),
            ]
        }
        Suite::Constants => {
            let mut report = Default::default();
            vec![exact("constants", alg.check_constants(&mut report), notes)]
        }
        Suite::Counts => {
            let c = integral_counts(alg);
            let rs = alg.root_system();
            let sum_d: usize = rs.degrees().iter().map(|&d| d as usize).sum();
            let mut out = vec![
                exact(
                    "n_g",
                    (c.n_g == sum_d).then_some(()).ok_or(format!("N_G = {} but sum of degrees = {sum_d}", c.n_g)),
                    notes,
                ),
                exact(
                    "deficiency_complex",
                    (c.deficiency_complex == 2 * rs.num_positive() as i64 - c.n_g as i64)
                        .then_some(())
                        .ok_or(format!("complex deficiency {}", c.deficiency_complex)),
                    notes,
                ),
                exact(
                    "deficiency_real",
                    (c.deficiency_real == sum_d as i64 - rs.rank_u() as i64 - c.n_g as i64)
                        .then_some(())
                        .ok_or(format!("real deficiency {}", c.deficiency_real)),
                    notes,
                ),
            ];
            if let Some(sl) = c.sl_closed_form {
                out.push(exact(
                    "sl_closed_form",
                    (sl == c.n_g).then_some(()).ok_or(format!("(N-1)(N+2)/2 = {sl} but N_G = {}", c.n_g)),
                    notes,
                ));
            }
            notes.push(format!(
                "N_G = {}, complex deficiency = {}, real deficiency = {}",
                c.n_g, c.deficiency_complex, c.deficiency_real
            ));
            out
        }
        Suite::Trig => {
            let p = need_params(sample, 2)?;
            let [a, b, c] = trig_identity_residuals(p[0], p[1]);
            vec![gate("addition_1", a), gate("addition_2", b), gate("addition_3", c)]
        }
        Suite::Lax => vec![gate("lax", lax_residual(need_state(sample)?, alg, rep, floor)?)],
        Suite::EomCrosscheck => {
            let st = need_state(sample)?;
            let d = eom_gcs(st, alg, floor)?;
            let intro = eom_intro_form(st, alg, floor)?;
            let ps = PoissonStructure::new(alg);
            let flow = hamiltonian_flow_oracle(st, &ps, &GcsHamiltonian { alg, floor })?;
            let printed = eom_gcs_printed(st, alg, floor)?;
            let flipped = d
                .dv
                .iter()
                .zip(&printed.dv)
                .map(|(x, y)| (x + y).abs())
                .fold(0.0, f64::max)
                / d.max_abs().max(1.0);
            vec![
                gate("intro_vs_symmetrized", scaled_diff(&d, &intro)),
                gate("poisson_flow", scaled_diff(&d, &flow)),
                info("printed_momentum_plus_implemented", flipped),
            ]
        }
        Suite::Gyrostat => {
            let st = need_state(sample)?;
            let d = eom_gcs(st, alg, floor)?;
            let dt = gyrostat_rhs(&st.t, &GyrostatSpec::for_t(st, alg, floor)?, alg)?;
            let ds = gyrostat_rhs_s(&st.s, &GyrostatSpec::for_s(st, alg, floor)?, alg)?;
            let scale = d.max_abs().max(1.0);
            let diff = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max) / scale;
            vec![gate("gyrostat_T", diff(&d.dt, &dt)), gate("gyrostat_S", diff(&d.ds, &ds))]
        }
        Suite::Rmatrix => {
            let (st, p) = (need_state(sample)?, need_params(sample, 2)?);
            let all = verify_rmatrix_identity(st, alg, rep, p[0], p[1], RootRange::AllRoots, floor)?;
            let pos = verify_rmatrix_identity(st, alg, rep, p[0], p[1], RootRange::PositiveRoots, floor)?;
            vec![gate("all_roots", all), info("positive_roots_only", pos)]
        }
        Suite::MTrace => {
            let (st, p) = (need_state(sample)?, need_params(sample, 2)?);
            vec![gate("m_trace", verify_m_trace(st, alg, rep, p[0], p[1], floor)?)]
        }
        Suite::Involutivity => {
            let (st, p) = (need_state(sample)?, need_params(sample, 2)?);
            let ps = PoissonStructure::new(alg);
            let mut grads = Vec::new();
            for spec in ctx.inv.specs() {
                if ctx.inv.rep_for(spec.index).is_none() {
                    continue;
                }
                for k in 0..=spec.degree {
                    let f = IntegralFunction { alg, inv: &ctx.inv, index: spec.index, k, floor };
                    grads.push(f.gradient(st)?);
                }
            }
            // Brackets of high-degree traces carry rounding proportional to
            // the gradient norms, so the absolute value is divided by
            // max(1, 1e-7·‖∇F‖‖∇G‖).
            let mut worst = 0.0f64;
            for (i, gi) in grads.iter().enumerate() {
                for gj in &grads[i + 1..] {
                    let b = ps.bracket_gradients(st, gi, gj).abs();
                    worst = worst.max(b / (1e-7 * norm(gi) * norm(gj)).max(1.0));
                }
            }
            let spectral = spectral_trace_bracket(st, alg, rep, (p[0], 2), (p[1], 3), floor)?.abs();
            vec![gate("integrals", worst), gate("spectral_traces", spectral)]
        }
        Suite::Casimir => {
            let st = need_state(sample)?;
            let ps = PoissonStructure::new(alg);
            let table = integrals(st, alg, &ctx.inv, floor)?;
            let dh = GcsHamiltonian { alg, floor }.gradient(st)?;
            let coords: Vec<Gradient> = (0..st.dim()).map(|k| Coordinate(k).gradient(st)).collect::<Result<_>>()?;
            let (mut central, mut flow, mut printed, mut corrected) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
            let mut even = 0;
            for spec in ctx.inv.specs().iter().filter(|s| s.degree % 2 == 0) {
                even += 1;
                let crep = ctx.inv.rep_for(spec.index).expect("even degrees have a trace");
                let c = CasimirFunction { alg, rep: crep, degree: spec.degree };
                let dc = c.gradient(st)?;
                let scale = norm(&dc).max(1.0);
                for dx in &coords {
                    central = central.max(ps.bracket_gradients(st, &dc, dx).abs() / scale);
                }
                let i1 = IntegralFunction { alg, inv: &ctx.inv, index: spec.index, k: 1, floor };
                let d1 = i1.gradient(st)?;
                flow = flow.max(ps.bracket_gradients(st, &d1, &dh).abs() / (norm(&d1) * norm(&dh)).max(1.0));
                let get = |k| table.iter().find(|e| e.j == spec.index + 1 && e.k == k).map_or(f64::NAN, |e| e.value);
                let (v0, v1) = (get(0), get(1));
                printed = printed.max((v1 - v0).abs() / v0.abs().max(1.0));
                corrected = corrected.max((v1 + v0).abs() / v0.abs().max(1.0));
            }
            let count = if even == alg.root_system().rank_u() { 0.0 } else { 1.0 };
            vec![
                gate("casimir_is_central", central),
                gate("first_polarization_conserved", flow),
                gate("even_degree_count_is_rank_u", count),
                gate("printed_equality", printed),
                info("sign_corrected_equality", corrected),
            ]
        }
        Suite::ModelMaps => {
            let (st, p) = (need_state(sample)?, need_params(sample, 1 + alg.num_positive())?);
            let x = p[0];
            let d = model3_map(st, alg, floor)?;
            let back = model3_inverse(&d, alg, floor)?;
            let trip = st
                .to_flat()
                .iter()
                .zip(back.to_flat())
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            let sig = d.varsigma(alg, floor)?;
            let eta = crate::lax::eta_lax(st, alg, floor)?.value;
            let sig_eta = (&sig - &eta).to_vec().iter().map(|v| v.abs()).fold(0.0, f64::max);
            let moment = d.moment_residual(alg, floor)?;
            let (_, l2) = spectral_lax_model1(st, alg, rep, x, floor)?;
            let (l1_inv, _) = spectral_lax_model1(&st.involution(), alg, rep, x, floor)?;
            let max_abs = |m: &nalgebra::DMatrix<f64>| m.iter().map(|v| v.abs()).fold(0.0, f64::max);
            let invol = max_abs(&(&l1_inv.value + &l2.value)) / max_abs(&l2.value).max(1.0);
            let gen = AlgebraElement::compact(alg, &p[1..1 + alg.num_positive()]);
            let m2 = ModelII::new(st.u.clone(), st.v.clone(), st.t.clone(), &gen, alg, rep)?;
            vec![
                gate("model3_round_trip", trip),
                gate("varsigma_equals_eta", sig_eta),
                gate("model3_moment", moment),
                gate("involution_anti_exchange", invol),
                gate("model2_moment", m2.moment_defect(alg, rep, floor)?),
                gate("model2_gauge_relation", m2.gauge_residual(alg, rep, x, floor)?),
            ]
        }
        Suite::Bc1 => vec![gate("bc1_max_deviation", bc1_deviation(need_state(sample)?, alg)?)],
    })
}

/// Largest representation dimension accepted by the r-matrix suite.
pub const MAX_TENSOR_DIM: usize = 16;

const BC1_DT: f64 = 1e-3;
const BC1_STEPS: usize = 5000;

/// Maximum deviation between the rank-one system and an independent
/// integration of the two-constant Hamiltonian
/// ½p² + (m₁² + m₂² − 2m₁m₂ cosh 2w)/sinh² 2w.
fn bc1_deviation(st: &GcsState, alg: &ChevalleyAlgebra) -> Result<f64> {
    let s2 = 2f64.sqrt();
    let (m1, m2) = (st.t[0] / s2, st.s[0] / s2);
    let force = |w: f64| {
        let (sh, ch) = ((2.0 * w).sinh(), (2.0 * w).cosh());
        let num = m1 * m1 + m2 * m2 - 2.0 * m1 * m2 * ch;
        4.0 * m1 * m2 / sh + 4.0 * num * ch / (sh * sh * sh)
    };
    let cfg = IntegratorConfig {
        dt: BC1_DT,
        steps: BC1_STEPS,
        monitor_stride: 1,
        ..Default::default()
    };
    let tr = integrate(st, alg, &cfg, &[])?;
    if let Some(ev) = tr.event {
        return Err(GcsError::InvalidArgument(format!("rank-one run stopped: {}", ev.message)));
    }
    let (mut w, mut p) = (st.u[0] / s2, st.v[0] / s2);
    let mut worst = 0.0f64;
    for (i, s) in tr.states.iter().enumerate() {
        if i > 0 {
            let h = BC1_DT;
            let (k1w, k1p) = (p, force(w));
            let (k2w, k2p) = (p + 0.5 * h * k1p, force(w + 0.5 * h * k1w));
            let (k3w, k3p) = (p + 0.5 * h * k2p, force(w + 0.5 * h * k2w));
            let (k4w, k4p) = (p + h * k3p, force(w + h * k3w));
            w += h / 6.0 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w);
            p += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
        }
        let spins = s.t[0] != st.t[0] || s.s[0] != st.s[0];
        worst = worst
            .max((s.u[0] - s2 * w).abs())
            .max((s.v[0] - s2 * p).abs())
            .max(if spins { f64::INFINITY } else { 0.0 });
    }
    Ok(worst)
}

fn check_support(p: &SuiteParams, ctx: &SuiteContext) -> std::result::Result<(), CliError> {
    match p.suite {
        Suite::Bc1 if !(p.family == Family::A && p.rank == 1) => {
            Err(CliError::Config("suite bc1 requires --family A --rank 1".into()))
        }
        Suite::MTrace if !(p.family == Family::A && ctx.rep.kind() == RepKind::Defining) => Err(CliError::Config(
            "suite m-trace supports the defining representation of type A only".into(),
        )),
        Suite::Rmatrix if ctx.rep.dim() > MAX_TENSOR_DIM => Err(CliError::Config(format!(
            "suite rmatrix builds n^2 x n^2 tensors; representation dimension {} exceeds {MAX_TENSOR_DIM}",
            ctx.rep.dim()
        ))),
        _ => Ok(()),
    }
}

fn residual_of(components: &[Component]) -> f64 {
    max_residual(components.iter().filter(|c| c.gating).map(|c| c.value))
}

/// Runs a suite and aggregates per-sample residuals.
pub fn run_suite(p: &SuiteParams, timing: bool) -> std::result::Result<SuiteReport, CliError> {
    let start = std::time::Instant::now();
    let ctx = SuiteContext::new(p.family, p.rank, p.rep)?;
    check_support(p, &ctx)?;
    let tol = p.tol.unwrap_or(p.suite.default_tol());
    if !(tol >= 0.0) {
        return Err(CliError::Config(format!("tolerance must be non-negative, got {tol}")));
    }
    let samples = if p.suite.is_exact() {
        1
    } else {
        p.samples.unwrap_or(p.suite.default_samples())
    };
    if samples == 0 {
        return Err(CliError::Config("--samples must be positive".into()));
    }
    let mut r = rng(p.seed);
    let mut notes = Vec::new();
    let mut residuals = Vec::with_capacity(samples);
    let mut per_component: BTreeMap<String, (Vec<f64>, bool)> = BTreeMap::new();
    let mut counterexample = None;
    for index in 0..samples {
        let sample = draw(p.suite, &ctx, &mut r);
        let residual = match evaluate(p.suite, &ctx, &sample, &mut notes) {
            Ok(comps) => {
                for c in &comps {
                    per_component
                        .entry(c.name.to_string())
                        .or_insert_with(|| (Vec::new(), c.gating))
                        .0
                        .push(c.value);
                }
                residual_of(&comps)
            }
            Err(e) => {
                notes.push(format!("sample {index}: {e}"));
                f64::INFINITY
            }
        };
        log::debug!("{} sample {index}: residual {residual:e}", p.suite.name());
        if !(residual <= tol) && counterexample.is_none() {
            counterexample = Some(Counterexample {
                suite: p.suite,
                family: p.family,
                rank: p.rank,
                rep: ctx.rep.kind(),
                seed: p.seed,
                index,
                tol,
                residual,
                sample,
            });
        }
        residuals.push(residual);
    }
    let components = per_component
        .into_iter()
        .map(|(k, (v, gating))| {
            let s = ComponentSummary {
                max: max_residual(v.iter().copied()),
                median: median(&v),
                gating,
            };
            (k, s)
        })
        .collect();
    let max = max_residual(residuals.iter().copied());
    Ok(SuiteReport {
        suite: p.suite,
        algebra: AlgebraInfo::new(&ctx.alg, Some(&ctx.rep)),
        seed: p.seed,
        samples,
        tol,
        passed: counterexample.is_none(),
        max,
        median: median(&residuals),
        components,
        residuals,
        notes,
        kappa: resolve_cs_kappa(&ctx.alg),
        convention: CONVENTION,
        counterexample,
        wall_seconds: timing.then(|| start.elapsed().as_secs_f64()),
    })
}

/// Re-evaluates a recorded sample and returns its residual.
pub fn replay(cx: &Counterexample) -> std::result::Result<f64, CliError> {
    let ctx = SuiteContext::new(cx.family, cx.rank, Some(cx.rep))?;
    let p = SuiteParams {
        rep: Some(cx.rep),
        ..SuiteParams::new(cx.suite, cx.family, cx.rank)
    };
    check_support(&p, &ctx)?;
    if let Some(st) = &cx.sample.state {
        st.check_shape(&ctx.alg).map_err(|e| CliError::Config(e.to_string()))?;
    }
    let mut notes = Vec::new();
    Ok(match evaluate(cx.suite, &ctx, &cx.sample, &mut notes) {
        Ok(c) => residual_of(&c),
        Err(_) => f64::INFINITY,
    })
}
