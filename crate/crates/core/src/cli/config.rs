use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::dynamics::IntegratorConfig;
use crate::invariants::{InvariantSet, TraceSource};
use crate::liealg::{ChevalleyAlgebra, Family, RepKind, Representation};
use crate::phase::GcsState;
use crate::sampling::{random_state, rng, SampleConfig};

use super::CliError;

/// Complete description of a simulation run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub algebra: AlgebraConfig,
    pub initial: InitialConfig,
    #[serde(default)]
    pub integrator: IntegratorConfig,
    #[serde(default)]
    pub monitors: MonitorConfig,
    #[serde(default)]
    pub output: OutputConfig,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraConfig {
    pub family: Family,
    pub rank: usize,
    /// Defaults to the defining representation for classical types and
    /// the adjoint representation otherwise.
    #[serde(default)]
    pub rep: Option<RepKind>,
}

/// Either an explicit phase-space point or a seeded random draw.
///
/// Spin maps are keyed by positive-root index ("0", "1", ..) or by root
/// label ("a1_0", "a1_1", ..); missing entries are zero.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum InitialConfig {
    Explicit {
        u: Vec<f64>,
        v: Vec<f64>,
        #[serde(rename = "T", default)]
        t: BTreeMap<String, f64>,
        #[serde(rename = "S", default)]
        s: BTreeMap<String, f64>,
    },
    Random {
        seed: u64,
        #[serde(default)]
        spin_norm: Option<f64>,
        #[serde(default)]
        u_box: Option<f64>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MonitorConfig {
    pub energy: bool,
    /// Pairs (j, k) with j one-based.
    pub integrals: Vec<(usize, u32)>,
    pub lax_residual: bool,
    pub spectral_points: Vec<f64>,
    /// Powers k recorded as tr ρ(L̃(x))^k at each spectral point.
    pub trace_powers: Vec<u32>,
    pub casimirs: bool,
}

impl Default for MonitorConfig {
    fn default() -> Self {
        Self {
            energy: true,
            integrals: Vec::new(),
            lax_residual: false,
            spectral_points: Vec::new(),
            trace_powers: vec![2],
            casimirs: false,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputConfig {
    pub trajectory_path: Option<PathBuf>,
    pub report_path: Option<PathBuf>,
    pub plot_script: bool,
}

/// Minimum distance of a spectral point from the poles 0 and 1.
pub const SPECTRAL_GAP: f64 = 1e-6;

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| invalid(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| invalid(format!("{}: {e}", path.display())))
    }

    pub fn build_algebra(&self) -> Result<(ChevalleyAlgebra, Representation), CliError> {
        let alg = ChevalleyAlgebra::build(self.algebra.family, self.algebra.rank)
            .map_err(|e| invalid(e.to_string()))?;
        let kind = self.algebra.rep.unwrap_or(if self.algebra.family.is_classical() {
            RepKind::Defining
        } else {
            RepKind::Adjoint
        });
        let rep = Representation::new(&alg, kind).map_err(|e| invalid(e.to_string()))?;
        Ok((alg, rep))
    }

    /// Checks everything that can be checked without integrating.
    pub fn validate(&self, alg: &ChevalleyAlgebra, inv: &InvariantSet) -> Result<(), CliError> {
        let it = &self.integrator;
        if !(it.dt > 0.0 && it.dt.is_finite()) {
            return Err(invalid(format!("integrator.dt must be positive, got {}", it.dt)));
        }
        if it.steps == 0 || it.monitor_stride == 0 {
            return Err(invalid("integrator.steps and integrator.monitor_stride must be positive"));
        }
        for &x in &self.monitors.spectral_points {
            if !x.is_finite() || x.abs() < SPECTRAL_GAP || (x - 1.0).abs() < SPECTRAL_GAP {
                return Err(invalid(format!("spectral point {x} is at a pole (0 or 1)")));
            }
        }
        if self.monitors.trace_powers.iter().any(|&k| k == 0) {
            return Err(invalid("trace powers must be positive"));
        }
        for &(j, k) in &self.monitors.integrals {
            let spec = j
                .checked_sub(1)
                .and_then(|i| inv.specs().get(i))
                .ok_or_else(|| invalid(format!("integral index j = {j} is out of range 1..={}", alg.rank())))?;
            if k > spec.degree {
                return Err(invalid(format!("integral I_{j}_{k}: k exceeds the degree {}", spec.degree)));
            }
            if spec.source == TraceSource::Degenerate {
                return Err(invalid(format!("integral I_{j}_{k}: no trace realization for degree {}", spec.degree)));
            }
        }
        Ok(())
    }

    pub fn initial_state(&self, alg: &ChevalleyAlgebra) -> Result<GcsState, CliError> {
        match &self.initial {
            InitialConfig::Explicit { u, v, t, s } => {
                let t = spin_vector(alg, t, "T")?;
                let s = spin_vector(alg, s, "S")?;
                GcsState::new(alg, u.clone(), v.clone(), t, s).map_err(|e| invalid(e.to_string()))
            }
            InitialConfig::Random { seed, spin_norm, u_box } => {
                let mut cfg = SampleConfig {
                    spin_norm: *spin_norm,
                    ..Default::default()
                };
                if let Some(b) = u_box {
                    if !(*b > 0.0) {
                        return Err(invalid("initial.u_box must be positive"));
                    }
                    cfg.u_box = *b;
                }
                Ok(random_state(alg, &mut rng(*seed), &cfg))
            }
        }
    }
}

fn spin_vector(alg: &ChevalleyAlgebra, map: &BTreeMap<String, f64>, what: &str) -> Result<Vec<f64>, CliError> {
    let rs = alg.root_system();
    let m = alg.num_positive();
    let mut out = vec![0.0; m];
    for (key, &val) in map {
        let idx = match key.parse::<usize>() {
            Ok(i) if i < m => i,
            Ok(i) => return Err(invalid(format!("{what}: root index {i} is out of range 0..{m}"))),
            Err(_) => rs
                .positive()
                .find(|&a| rs.label(a) == *key)
                .ok_or_else(|| invalid(format!("{what}: unknown positive root label {key:?}")))?,
        };
        out[idx] = val;
    }
    Ok(out)
}
