use serde::{Deserialize, Serialize};

use crate::error::{GcsError, Result};
use crate::liealg::ChevalleyAlgebra;
use crate::phase::{GcsState, SINGULAR_FLOOR};

use super::eom::eom_gcs;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    #[serde(rename = "rk4")]
    Rk4,
    #[serde(rename = "rk45-adaptive", alias = "rk45")]
    Rk45,
}

/// Integration controls. For the adaptive method `dt` is both the initial
/// step and the spacing of the output grid before striding.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct IntegratorConfig {
    pub method: Method,
    pub dt: f64,
    pub steps: usize,
    pub monitor_stride: usize,
    pub tol: f64,
    pub floor: f64,
    pub max_rejections: usize,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        Self {
            method: Method::Rk4,
            dt: 1e-3,
            steps: 10_000,
            monitor_stride: 100,
            tol: 1e-10,
            floor: SINGULAR_FLOOR,
            max_rejections: 50,
        }
    }
}

/// A quantity evaluated along a trajectory.
pub trait Monitor {
    fn names(&self) -> Vec<String>;
    fn eval(&self, st: &GcsState) -> Result<Vec<f64>>;
}

/// Wraps a closure as a monitor.
pub struct FnMonitor<F> {
    pub names: Vec<String>,
    pub f: F,
}

impl<F: Fn(&GcsState) -> Result<Vec<f64>>> Monitor for FnMonitor<F> {
    fn names(&self) -> Vec<String> {
        self.names.clone()
    }

    fn eval(&self, st: &GcsState) -> Result<Vec<f64>> {
        (self.f)(st)
    }
}

/// Record of an integration stopped by a wall approach.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WallEvent {
    pub t: f64,
    pub message: String,
}

/// Sampled states with monitor values at the same times.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<GcsState>,
    pub monitor_names: Vec<String>,
    pub monitors: Vec<Vec<f64>>,
    pub event: Option<WallEvent>,
    pub accepted_steps: usize,
    pub rejected_steps: usize,
}

impl Trajectory {
    /// Values of the named monitor along the trajectory.
    pub fn monitor(&self, name: &str) -> Option<Vec<f64>> {
        let k = self.monitor_names.iter().position(|n| n == name)?;
        Some(self.monitors.iter().map(|row| row[k]).collect())
    }

    /// max_t |Q(t) − Q(0)| / max(1, |Q(0)|) for the named monitor.
    pub fn relative_drift(&self, name: &str) -> Option<f64> {
        let q = self.monitor(name)?;
        let q0 = *q.first()?;
        Some(
            q.iter()
                .map(|x| (x - q0).abs())
                .fold(0.0, f64::max)
                / q0.abs().max(1.0),
        )
    }

    pub fn last_state(&self) -> Option<&GcsState> {
        self.states.last()
    }
}

fn axpy(y: &[f64], a: f64, x: &[f64]) -> Vec<f64> {
    y.iter().zip(x).map(|(p, q)| p + a * q).collect()
}

fn rhs(y: &[f64], alg: &ChevalleyAlgebra, floor: f64) -> Result<Vec<f64>> {
    let (l, m) = (alg.rank(), alg.num_positive());
    let st = GcsState::from_flat(l, m, y);
    Ok(eom_gcs(&st, alg, floor)?.to_flat())
}

/// One classical fourth-order Runge–Kutta step of size `h` (either sign).
pub fn rk4_step(st: &GcsState, alg: &ChevalleyAlgebra, h: f64, floor: f64) -> Result<GcsState> {
    let y = st.to_flat();
    let k1 = rhs(&y, alg, floor)?;
    let k2 = rhs(&axpy(&y, 0.5 * h, &k1), alg, floor)?;
    let k3 = rhs(&axpy(&y, 0.5 * h, &k2), alg, floor)?;
    let k4 = rhs(&axpy(&y, h, &k3), alg, floor)?;
    let out: Vec<f64> = (0..y.len())
        .map(|i| y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]))
        .collect();
    Ok(GcsState::from_flat(alg.rank(), alg.num_positive(), &out))
}

// Dormand–Prince 5(4) tableau.
const DP_C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const DP_A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const DP_B5: [f64; 7] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
const DP_B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

/// One Dormand–Prince trial step; returns the fifth-order solution and the
/// scaled error norm.
fn dp_step(y: &[f64], alg: &ChevalleyAlgebra, h: f64, tol: f64, floor: f64) -> Result<(Vec<f64>, f64)> {
    let mut k: Vec<Vec<f64>> = Vec::with_capacity(7);
    for i in 0..7 {
        let _ = DP_C[i];
        let mut yi = y.to_vec();
        for (j, kj) in k.iter().enumerate() {
            let a = DP_A[i][j];
            if a != 0.0 {
                for (p, q) in yi.iter_mut().zip(kj) {
                    *p += h * a * q;
                }
            }
        }
        k.push(rhs(&yi, alg, floor)?);
    }
    let n = y.len();
    let mut y5 = y.to_vec();
    let mut err = 0.0f64;
    for i in 0..n {
        let (mut s5, mut s4) = (0.0, 0.0);
        for j in 0..7 {
            s5 += DP_B5[j] * k[j][i];
            s4 += DP_B4[j] * k[j][i];
        }
        y5[i] += h * s5;
        let scale = tol * (1.0 + y[i].abs().max(y5[i].abs()));
        err = err.max((h * (s5 - s4)).abs() / scale);
    }
    Ok((y5, err))
}

fn record(
    traj: &mut Trajectory,
    t: f64,
    st: &GcsState,
    monitors: &[&dyn Monitor],
) -> Result<()> {
    let mut row = Vec::new();
    for mon in monitors {
        row.extend(mon.eval(st)?);
    }
    traj.times.push(t);
    traj.states.push(st.clone());
    traj.monitors.push(row);
    Ok(())
}

fn wall(traj: &mut Trajectory, t: f64, err: GcsError) -> Result<()> {
    match err {
        GcsError::Singular { .. } => {
            log::warn!("integration stopped at t = {t}: {err}");
            traj.event = Some(WallEvent {
                t,
                message: err.to_string(),
            });
            Ok(())
        }
        other => Err(other),
    }
}

/// Integrates from `state0` over `steps` output intervals of length `dt`,
/// recording states and monitors every `monitor_stride` intervals and at the
/// final time. A wall approach stops the run and is recorded in `event`.
pub fn integrate(
    state0: &GcsState,
    alg: &ChevalleyAlgebra,
    cfg: &IntegratorConfig,
    monitors: &[&dyn Monitor],
) -> Result<Trajectory> {
    if !(cfg.dt > 0.0) || !cfg.dt.is_finite() {
        return Err(GcsError::InvalidArgument("dt must be positive".into()));
    }
    state0.check_shape(alg)?;
    state0.check_regular(alg, cfg.floor)?;
    let stride = cfg.monitor_stride.max(1);
    let mut traj = Trajectory {
        monitor_names: monitors.iter().flat_map(|m| m.names()).collect(),
        ..Default::default()
    };
    record(&mut traj, 0.0, state0, monitors)?;
    let mut st = state0.clone();
    let mut h_adapt = cfg.dt;
    for step in 1..=cfg.steps {
        let t_prev = (step - 1) as f64 * cfg.dt;
        let t = step as f64 * cfg.dt;
        let next = match cfg.method {
            Method::Rk4 => rk4_step(&st, alg, cfg.dt, cfg.floor).map(|s| {
                traj.accepted_steps += 1;
                s
            }),
            Method::Rk45 => advance_adaptive(&st, alg, cfg, t_prev, t, &mut h_adapt, &mut traj),
        };
        match next.and_then(|s| s.check_regular(alg, cfg.floor).map(|_| s)) {
            Ok(s) => st = s,
            Err(e) => {
                wall(&mut traj, t_prev, e)?;
                return Ok(traj);
            }
        }
        if step % stride == 0 || step == cfg.steps {
            if let Err(e) = record(&mut traj, t, &st, monitors) {
                wall(&mut traj, t, e)?;
                return Ok(traj);
            }
        }
    }
    Ok(traj)
}

fn advance_adaptive(
    st: &GcsState,
    alg: &ChevalleyAlgebra,
    cfg: &IntegratorConfig,
    t0: f64,
    t1: f64,
    h: &mut f64,
    traj: &mut Trajectory,
) -> Result<GcsState> {
    let mut y = st.to_flat();
    let mut t = t0;
    let mut rejections = 0;
    while t < t1 - 1e-15 * t1.abs().max(1.0) {
        let step = h.min(t1 - t);
        let (y5, err) = dp_step(&y, alg, step, cfg.tol, cfg.floor)?;
        if err <= 1.0 {
            y = y5;
            t += step;
            traj.accepted_steps += 1;
            rejections = 0;
            let grow = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
            if step == *h {
                *h = step * grow;
            } else {
                *h = h.max(step * grow).min(*h * 5.0);
            }
        } else {
            traj.rejected_steps += 1;
            rejections += 1;
            if rejections > cfg.max_rejections {
                return Err(GcsError::StepRejection { t, rejections });
            }
            *h = step * (0.9 * err.powf(-0.2)).clamp(0.1, 0.9);
        }
    }
    Ok(GcsState::from_flat(alg.rank(), alg.num_positive(), &y))
}
