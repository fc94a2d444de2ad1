//! Seeded generation of regular phase-space points.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::liealg::ChevalleyAlgebra;
use crate::phase::GcsState;

/// Deterministic generator used by every randomized check.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Parameters of the random-state distribution.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SampleConfig {
    /// u_j uniform in [−u_box, u_box].
    pub u_box: f64,
    /// Standard deviation of the momenta.
    pub v_scale: f64,
    /// When set, T and S are rescaled to this Euclidean norm.
    pub spin_norm: Option<f64>,
    /// Minimum |u_α| over positive roots.
    pub wall_margin: f64,
    /// Maximum |u_α| over positive roots.
    pub max_root: f64,
}

impl Default for SampleConfig {
    fn default() -> Self {
        Self {
            u_box: 1.5,
            v_scale: 1.0,
            spin_norm: None,
            wall_margin: 0.25,
            max_root: 4.0,
        }
    }
}

/// Draws a regular state by rejection on the wall margin.
pub fn random_state<R: Rng>(alg: &ChevalleyAlgebra, rng: &mut R, cfg: &SampleConfig) -> GcsState {
    let (l, m) = (alg.rank(), alg.num_positive());
    let rs = alg.root_system();
    let u = loop {
        let u: Vec<f64> = (0..l).map(|_| rng.random_range(-cfg.u_box..=cfg.u_box)).collect();
        let ok = rs.positive().all(|a| {
            let x = rs.pairing(a, &u).abs();
            x >= cfg.wall_margin && x <= cfg.max_root
        });
        if ok {
            break u;
        }
    };
    let v: Vec<f64> = (0..l)
        .map(|_| cfg.v_scale * rng.sample::<f64, _>(StandardNormal))
        .collect();
    let mut spin = || -> Vec<f64> {
        let mut x: Vec<f64> = (0..m).map(|_| rng.random_range(-1.0..=1.0)).collect();
        if let Some(norm) = cfg.spin_norm {
            let n = x.iter().map(|y| y * y).sum::<f64>().sqrt();
            if n > 0.0 {
                x.iter_mut().for_each(|y| *y *= norm / n);
            }
        }
        x
    };
    let t = spin();
    let s = spin();
    GcsState { u, v, t, s }
}

/// Uniform draw from [lo, hi] avoiding |x − p| < gap for each pole p.
pub fn spectral_point<R: Rng>(rng: &mut R, lo: f64, hi: f64, poles: &[f64], gap: f64) -> f64 {
    loop {
        let x = rng.random_range(lo..=hi);
        if poles.iter().all(|p| (x - p).abs() >= gap) {
            return x;
        }
    }
}
