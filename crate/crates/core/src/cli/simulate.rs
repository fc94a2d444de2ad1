use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::dynamics::{integrate, Trajectory, WallEvent};
use crate::error::Result;
use crate::invariants::InvariantSet;
use crate::lax::{integrals, lax_residual, spectral_lax_intro};
use crate::liealg::{ChevalleyAlgebra, Representation};
use crate::phase::{casimirs, hamiltonian_gcs, resolve_cs_kappa, GcsState};

use super::config::RunConfig;
use super::format::float;
use super::{plot, AlgebraInfo, CliError, CONVENTION};

/// Relative drift max_t |Q(t) − Q(0)| / max(1, |Q(0)|) of one column.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DriftSummary {
    pub name: String,
    pub initial: f64,
    pub max_relative_drift: f64,
}

/// Machine-readable summary of a simulation run.
#[derive(Clone, Debug, Serialize)]
pub struct SimulationReport {
    pub algebra: AlgebraInfo,
    pub kappa: f64,
    pub convention: &'static str,
    pub config: RunConfig,
    pub initial_state: GcsState,
    pub trajectory_path: PathBuf,
    pub rows: usize,
    pub t_final: f64,
    pub accepted_steps: usize,
    pub rejected_steps: usize,
    pub event: Option<WallEvent>,
    pub max_energy_drift: Option<f64>,
    pub drifts: Vec<DriftSummary>,
    pub casimirs: Vec<DriftSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_seconds: Option<f64>,
}

/// Column layout and evaluation of the derived quantities of one row.
struct Columns<'a> {
    alg: &'a ChevalleyAlgebra,
    rep: &'a Representation,
    inv: &'a InvariantSet,
    cfg: &'a RunConfig,
    floor: f64,
}

impl Columns<'_> {
    fn header(&self) -> Vec<String> {
        let rs = self.alg.root_system();
        let l = self.alg.rank();
        let mut h = vec!["t".to_string()];
        h.extend((1..=l).map(|j| format!("u_{j}")));
        h.extend((1..=l).map(|j| format!("v_{j}")));
        h.extend(rs.positive().map(|a| format!("T_{}", rs.label(a))));
        h.extend(rs.positive().map(|a| format!("S_{}", rs.label(a))));
        h.push("H".into());
        h.extend(self.derived_names());
        h
    }

    fn derived_names(&self) -> Vec<String> {
        let m = &self.cfg.monitors;
        let mut h: Vec<String> = m.integrals.iter().map(|(j, k)| format!("I_{j}_{k}")).collect();
        if m.lax_residual {
            h.push("lax_res".into());
        }
        for &x in &m.spectral_points {
            h.extend(m.trace_powers.iter().map(|k| format!("trL{k}_{}", float(x))));
        }
        h
    }

    fn derived(&self, st: &GcsState) -> Result<Vec<f64>> {
        let m = &self.cfg.monitors;
        let mut out = Vec::new();
        if !m.integrals.is_empty() {
            let table = integrals(st, self.alg, self.inv, self.floor)?;
            for &(j, k) in &m.integrals {
                let e = table.iter().find(|e| e.j == j && e.k == k);
                out.push(e.map_or(f64::NAN, |e| e.value));
            }
        }
        if m.lax_residual {
            out.push(lax_residual(st, self.alg, self.rep, self.floor)?);
        }
        for &x in &m.spectral_points {
            let l = spectral_lax_intro(st, self.alg, self.rep, x, self.floor)?;
            out.extend(m.trace_powers.iter().map(|&k| l.trace_power(k)));
        }
        Ok(out)
    }
}

fn drift(name: String, col: &[f64]) -> DriftSummary {
    let q0 = col.first().copied().unwrap_or(0.0);
    let d = col.iter().map(|x| (x - q0).abs()).fold(0.0, f64::max) / q0.abs().max(1.0);
    DriftSummary {
        name,
        initial: q0,
        max_relative_drift: d,
    }
}

/// Outcome of a simulation, with the exit status it maps to.
pub struct SimulationOutcome {
    pub report: SimulationReport,
    pub singular: bool,
}

fn resolve(base: &Path, p: &Path) -> PathBuf {
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        base.join(p)
    }
}

/// Runs `cfg`, writes the trajectory CSV, the report JSON and optionally a
/// plot script. Relative output paths are taken relative to `base`.
pub fn run_simulation(
    cfg: &RunConfig,
    base: &Path,
    out_override: Option<&Path>,
    timing: bool,
) -> std::result::Result<SimulationOutcome, CliError> {
    let start = std::time::Instant::now();
    let (alg, rep) = cfg.build_algebra()?;
    let inv = InvariantSet::new(&alg, rep.clone()).map_err(|e| CliError::Config(e.to_string()))?;
    cfg.validate(&alg, &inv)?;
    let st0 = cfg.initial_state(&alg)?;
    let floor = cfg.integrator.floor;
    st0.check_regular(&alg, floor)
        .map_err(|e| CliError::Singular(format!("initial state: {e}")))?;

    let traj_path = match (out_override, &cfg.output.trajectory_path) {
        (Some(p), _) => p.to_path_buf(),
        (None, Some(p)) => resolve(base, p),
        (None, None) => base.join("trajectory.csv"),
    };
    let report_path = match (&cfg.output.report_path, out_override) {
        (Some(p), None) => resolve(base, p),
        _ => traj_path.with_extension("report.json"),
    };

    let cols = Columns {
        alg: &alg,
        rep: &rep,
        inv: &inv,
        cfg,
        floor,
    };
    log::info!("integrating {} for {} steps", alg.tag(), cfg.integrator.steps);
    let traj: Trajectory = integrate(&st0, &alg, &cfg.integrator, &[]).map_err(|e| match e {
        crate::GcsError::Singular { .. } | crate::GcsError::Pole { .. } => CliError::Singular(e.to_string()),
        other => CliError::Runtime(other.to_string()),
    })?;

    let header = cols.header();
    let mut csv = header.join(",");
    csv.push('\n');
    let mut table: Vec<Vec<f64>> = Vec::with_capacity(traj.states.len());
    let mut event = traj.event.clone();
    for (t, st) in traj.times.iter().zip(&traj.states) {
        let h = hamiltonian_gcs(st, &alg, floor);
        let rest = h.and_then(|h| Ok((h, cols.derived(st)?)));
        let (h, rest) = match rest {
            Ok(x) => x,
            Err(e) => {
                event.get_or_insert(WallEvent {
                    t: *t,
                    message: e.to_string(),
                });
                break;
            }
        };
        let mut row = vec![*t];
        row.extend(st.to_flat());
        row.push(h);
        row.extend(rest);
        let _ = writeln!(csv, "{}", row.iter().map(|x| float(*x)).collect::<Vec<_>>().join(","));
        table.push(row);
    }
    write_file(&traj_path, &csv)?;

    let first_derived = 2 + 2 * alg.rank() + 2 * alg.num_positive();
    let column = |k: usize| table.iter().map(|r| r[k]).collect::<Vec<f64>>();
    let energy = drift("H".into(), &column(first_derived - 1));
    let mut drifts = Vec::new();
    if cfg.monitors.energy {
        drifts.push(energy.clone());
    }
    for (i, name) in cols.derived_names().into_iter().enumerate() {
        if name != "lax_res" {
            drifts.push(drift(name, &column(first_derived + i)));
        }
    }
    let mut cas = Vec::new();
    if cfg.monitors.casimirs {
        let n = table.len();
        let values: Vec<Vec<(u32, f64)>> = traj.states[..n]
            .iter()
            .map(|s| casimirs(s, &alg, &inv))
            .collect::<Result<_>>()
            .map_err(|e| CliError::Runtime(e.to_string()))?;
        if let Some(first) = values.first() {
            for (i, (d, _)) in first.iter().enumerate() {
                let col: Vec<f64> = values.iter().map(|v| v[i].1).collect();
                cas.push(drift(format!("C_{d}"), &col));
            }
        }
    }

    if let Some(ev) = &event {
        log::warn!("integration stopped at t = {}: {}", ev.t, ev.message);
    }
    let report = SimulationReport {
        algebra: AlgebraInfo::new(&alg, Some(&rep)),
        kappa: resolve_cs_kappa(&alg),
        convention: CONVENTION,
        config: cfg.clone(),
        initial_state: st0,
        trajectory_path: traj_path.clone(),
        rows: table.len(),
        t_final: table.last().map_or(0.0, |r| r[0]),
        accepted_steps: traj.accepted_steps,
        rejected_steps: traj.rejected_steps,
        event: event.clone(),
        max_energy_drift: cfg.monitors.energy.then_some(energy.max_relative_drift),
        drifts,
        casimirs: cas,
        wall_seconds: timing.then(|| start.elapsed().as_secs_f64()),
    };
    let json = serde_json::to_string_pretty(&report).expect("report serializes");
    write_file(&report_path, &(json + "\n"))?;
    if cfg.output.plot_script {
        let script = plot::script_for(&traj_path, &header)?;
        write_file(&traj_path.with_extension("gp"), &script)?;
    }
    Ok(SimulationOutcome {
        singular: event.is_some(),
        report,
    })
}

pub(crate) fn write_file(path: &Path, text: &str) -> std::result::Result<(), CliError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
    }
    std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

/// Drift table keyed by column name, for quick lookups in tests.
pub fn drift_map(report: &SimulationReport) -> BTreeMap<String, f64> {
    report
        .drifts
        .iter()
        .chain(&report.casimirs)
        .map(|d| (d.name.clone(), d.max_relative_drift))
        .collect()
}
