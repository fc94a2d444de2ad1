use gcs_core::dynamics::{
    eom_gcs, eom_gcs_printed, eom_intro_form, gyrostat_rhs, gyrostat_rhs_s,
    hamiltonian_flow_oracle, integrate, rk4_step, FnMonitor, GyrostatSpec, IntegratorConfig,
    Method, StateDerivative,
};
use gcs_core::liealg::{ChevalleyAlgebra, Family};
use gcs_core::phase::{
    hamiltonian_gcs, FnFunction, GcsHamiltonian, GcsState, PhaseFunction, PoissonStructure,
    SINGULAR_FLOOR,
};
use gcs_core::sampling::{random_state, rng, SampleConfig};
use gcs_core::{GcsError, Result};
use proptest::prelude::*;

const FLOOR: f64 = SINGULAR_FLOOR;

fn alg(f: Family, l: usize) -> ChevalleyAlgebra {
    ChevalleyAlgebra::build(f, l).unwrap()
}

fn dynamic_types() -> Vec<ChevalleyAlgebra> {
    vec![
        alg(Family::A, 1),
        alg(Family::A, 2),
        alg(Family::B, 2),
        alg(Family::G, 2),
    ]
}

fn scaled_diff(a: &StateDerivative, b: &StateDerivative) -> f64 {
    a.max_abs_diff(b) / a.max_abs().max(1.0)
}

fn energy_monitor(a: &ChevalleyAlgebra) -> FnMonitor<impl Fn(&GcsState) -> Result<Vec<f64>> + '_> {
    FnMonitor {
        names: vec!["H".into()],
        f: move |s: &GcsState| Ok(vec![hamiltonian_gcs(s, a, FLOOR)?]),
    }
}

#[test]
fn free_motion_derivative() {
    let a = alg(Family::A, 2);
    let mut st = GcsState::zeros(&a);
    st.u = vec![0.3, 1.2];
    st.v = vec![-0.5, 0.8];
    let d = eom_gcs(&st, &a, FLOOR).unwrap();
    assert_eq!(d.du, st.v);
    assert!(d.dv.iter().chain(&d.dt).chain(&d.ds).all(|x| *x == 0.0));
}

#[test]
fn rank_one_spins_are_frozen() {
    let a = alg(Family::A, 1);
    let st = GcsState::new(&a, vec![0.4], vec![0.1], vec![0.9], vec![-0.3]).unwrap();
    let d = eom_gcs(&st, &a, FLOOR).unwrap();
    assert_eq!(d.dt, vec![0.0]);
    assert_eq!(d.ds, vec![0.0]);
    assert!(d.dv[0] != 0.0);
    let intro = eom_intro_form(&st, &a, FLOOR).unwrap();
    assert!(d.max_abs_diff(&intro) < 1e-14);
}

#[test]
fn oracle_on_elementary_hamiltonians() {
    let a = alg(Family::A, 2);
    let ps = PoissonStructure::new(&a);
    let st = random_state(&a, &mut rng(1), &SampleConfig::default());
    let kinetic = FnFunction(|s: &GcsState| Ok(0.5 * s.v.iter().map(|x| x * x).sum::<f64>()));
    let d = hamiltonian_flow_oracle(&st, &ps, &kinetic).unwrap();
    for j in 0..2 {
        assert!((d.du[j] - st.v[j]).abs() < 1e-9);
    }
    assert!(d.dv.iter().chain(&d.dt).chain(&d.ds).all(|x| x.abs() < 1e-9));
    let d = hamiltonian_flow_oracle(&st, &ps, &gcs_core::phase::Coordinate(0)).unwrap();
    assert_eq!(d.dv, vec![-1.0, 0.0]);
    assert!(d.du.iter().chain(&d.dt).chain(&d.ds).all(|x| *x == 0.0));
}

#[test]
fn equations_of_motion_match_poisson_flow() {
    for a in dynamic_types() {
        let ps = PoissonStructure::new(&a);
        let h = GcsHamiltonian { alg: &a, floor: FLOOR };
        let h_fd = FnFunction(|s: &GcsState| hamiltonian_gcs(s, &a, FLOOR));
        let mut r = rng(21);
        let (mut worst_exact, mut worst_fd) = (0.0f64, 0.0f64);
        for _ in 0..100 {
            let st = random_state(&a, &mut r, &SampleConfig::default());
            let direct = eom_gcs(&st, &a, FLOOR).unwrap();
            let exact = hamiltonian_flow_oracle(&st, &ps, &h).unwrap();
            let fd = hamiltonian_flow_oracle(&st, &ps, &h_fd).unwrap();
            worst_exact = worst_exact.max(scaled_diff(&direct, &exact));
            worst_fd = worst_fd.max(scaled_diff(&direct, &fd));
        }
        assert!(worst_exact <= 1e-12, "{}: analytic {worst_exact}", a.tag());
        assert!(worst_fd <= 1e-8, "{}: finite differences {worst_fd}", a.tag());
    }
}

#[test]
fn printed_momentum_expansion_has_reversed_sign() {
    let a = alg(Family::A, 2);
    let st = random_state(&a, &mut rng(2), &SampleConfig::default());
    let d = eom_gcs(&st, &a, FLOOR).unwrap();
    let p = eom_gcs_printed(&st, &a, FLOOR).unwrap();
    for (x, y) in d.dv.iter().zip(&p.dv) {
        assert!((x + y).abs() < 1e-14 && x.abs() > 1e-6);
    }
    assert_eq!(d.dt, p.dt);
    assert_eq!(d.ds, p.ds);
}

#[test]
fn intro_form_agrees_with_symmetrized_form() {
    for a in dynamic_types() {
        let mut r = rng(22);
        for _ in 0..100 {
            let st = random_state(&a, &mut r, &SampleConfig::default());
            let d = eom_gcs(&st, &a, FLOOR).unwrap();
            let intro = eom_intro_form(&st, &a, FLOOR).unwrap();
            assert!(scaled_diff(&d, &intro) <= 1e-12, "{}", a.tag());
        }
    }
}

#[test]
fn isotropic_gyrostat_is_static() {
    for a in [alg(Family::A, 2), alg(Family::A, 3), alg(Family::D, 4)] {
        let nr = a.num_roots();
        let spec = GyrostatSpec { f: vec![1.7; nr], g: vec![0.0; nr] };
        let t: Vec<f64> = (0..a.num_positive()).map(|k| 0.3 + 0.1 * k as f64).collect();
        assert!(gyrostat_rhs(&t, &spec, &a).unwrap().iter().all(|x| x.abs() < 1e-15));
    }
    let b2 = alg(Family::B, 2);
    let nr = b2.num_roots();
    let spec = GyrostatSpec { f: vec![1.0; nr], g: vec![0.0; nr] };
    let rates = gyrostat_rhs(&[0.3, 0.5, 0.7, 0.2], &spec, &b2).unwrap();
    assert!(rates.iter().any(|x| x.abs() > 1e-6), "unequal root lengths break isotropy");
}

#[test]
fn rank_one_gyrostat_is_static() {
    let a = alg(Family::A, 1);
    let spec = GyrostatSpec { f: vec![2.0, 2.0], g: vec![0.5, -0.5] };
    assert_eq!(gyrostat_rhs(&[1.0], &spec, &a).unwrap(), vec![0.0]);
}

#[test]
fn gyrostat_parity_is_enforced() {
    let a = alg(Family::A, 2);
    let spec = GyrostatSpec { f: vec![1.0; 6], g: vec![1.0; 6] };
    assert!(matches!(
        gyrostat_rhs(&[0.0; 3], &spec, &a),
        Err(GcsError::InvalidArgument(_))
    ));
}

#[test]
fn gyrostat_substitution_reproduces_spin_equations() {
    for a in dynamic_types() {
        let mut r = rng(23);
        for _ in 0..100 {
            let st = random_state(&a, &mut r, &SampleConfig::default());
            let d = eom_gcs(&st, &a, FLOOR).unwrap();
            let ft = GyrostatSpec::for_t(&st, &a, FLOOR).unwrap();
            let fs = GyrostatSpec::for_s(&st, &a, FLOOR).unwrap();
            let dt = gyrostat_rhs(&st.t, &ft, &a).unwrap();
            let ds = gyrostat_rhs_s(&st.s, &fs, &a).unwrap();
            let scale = d.max_abs().max(1.0);
            for (x, y) in d.dt.iter().zip(&dt).chain(d.ds.iter().zip(&ds)) {
                assert!((x - y).abs() <= 1e-12 * scale, "{}: {x} vs {y}", a.tag());
            }
        }
    }
}

#[test]
fn free_motion_is_linear() {
    let a = alg(Family::B, 2);
    let mut st = GcsState::zeros(&a);
    st.u = vec![0.7, 0.2];
    st.v = vec![0.1, 0.05];
    let cfg = IntegratorConfig { dt: 1e-2, steps: 300, monitor_stride: 10, ..Default::default() };
    let tr = integrate(&st, &a, &cfg, &[]).unwrap();
    assert!(tr.event.is_none());
    for (t, s) in tr.times.iter().zip(&tr.states) {
        for j in 0..2 {
            assert!((s.u[j] - (st.u[j] + st.v[j] * t)).abs() < 1e-13);
            assert_eq!(s.v[j], st.v[j]);
        }
    }
    assert_eq!(tr.times.len(), 31);
    assert!(tr.times.windows(2).all(|w| w[1] > w[0]));
}

/// Independent single-degree-of-freedom RK4 for ẇ = p, ṗ = −V'(w) with
/// V(w) = (m₁² + m₂² − 2m₁m₂ cosh 2w)/sinh² 2w.
fn bc1_trajectory(w0: f64, p0: f64, m1: f64, m2: f64, dt: f64, steps: usize) -> Vec<(f64, f64)> {
    let force = |w: f64| {
        let (sh, ch) = ((2.0 * w).sinh(), (2.0 * w).cosh());
        let num = m1 * m1 + m2 * m2 - 2.0 * m1 * m2 * ch;
        let dv = (-4.0 * m1 * m2 * sh) / (sh * sh) - 4.0 * num * ch / (sh * sh * sh);
        -dv
    };
    let mut out = vec![(w0, p0)];
    let (mut w, mut p) = (w0, p0);
    for _ in 0..steps {
        let (k1w, k1p) = (p, force(w));
        let (k2w, k2p) = (p + 0.5 * dt * k1p, force(w + 0.5 * dt * k1w));
        let (k3w, k3p) = (p + 0.5 * dt * k2p, force(w + 0.5 * dt * k2w));
        let (k4w, k4p) = (p + dt * k3p, force(w + dt * k3w));
        w += dt / 6.0 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w);
        p += dt / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
        out.push((w, p));
    }
    out
}

#[test]
fn rank_one_run_matches_bc1_integration() {
    let a = alg(Family::A, 1);
    let s2 = 2f64.sqrt();
    let st = GcsState::new(&a, vec![0.9], vec![0.3], vec![0.6], vec![0.25]).unwrap();
    let (dt, steps) = (1e-3, 5000);
    let cfg = IntegratorConfig { dt, steps, monitor_stride: 1, ..Default::default() };
    let tr = integrate(&st, &a, &cfg, &[]).unwrap();
    assert!(tr.event.is_none());
    let oracle = bc1_trajectory(0.9 / s2, 0.3 / s2, 0.6 / s2, 0.25 / s2, dt, steps);
    let mut worst = 0.0f64;
    for (s, (w, p)) in tr.states.iter().zip(&oracle) {
        worst = worst.max((s.u[0] - s2 * w).abs()).max((s.v[0] - s2 * p).abs());
        assert_eq!(s.t, st.t);
        assert_eq!(s.s, st.s);
    }
    assert!(worst <= 1e-8, "max deviation {worst}");
}

#[test]
fn forward_then_backward_returns_home() {
    let a = alg(Family::A, 2);
    let st0 = random_state(&a, &mut rng(6), &SampleConfig { spin_norm: Some(1.0), ..Default::default() });
    let h = 1e-3;
    let mut st = st0.clone();
    for _ in 0..2000 {
        st = rk4_step(&st, &a, h, FLOOR).unwrap();
    }
    for _ in 0..2000 {
        st = rk4_step(&st, &a, -h, FLOOR).unwrap();
    }
    let dev = st
        .to_flat()
        .iter()
        .zip(st0.to_flat())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max);
    assert!(dev <= 1e-9, "{dev}");
}

fn conservation_state(a: &ChevalleyAlgebra) -> GcsState {
    random_state(a, &mut rng(6), &SampleConfig { spin_norm: Some(1.0), ..Default::default() })
}

#[test]
fn energy_drift_and_fourth_order_convergence() {
    let a = alg(Family::A, 2);
    let st = conservation_state(&a);
    let mon = energy_monitor(&a);
    let drift = |dt: f64| {
        let cfg = IntegratorConfig {
            dt,
            steps: (10.0 / dt).round() as usize,
            monitor_stride: 10,
            ..Default::default()
        };
        let tr = integrate(&st, &a, &cfg, &[&mon]).unwrap();
        assert!(tr.event.is_none());
        tr.relative_drift("H").unwrap()
    };
    let (d1, d2) = (drift(1e-3), drift(5e-4));
    assert!(d1 <= 1e-8, "drift {d1}");
    let ratio = d1 / d2;
    assert!((ratio - 16.0).abs() <= 0.2 * 16.0, "ratio {ratio}");
}

#[test]
fn adaptive_method_conserves_energy() {
    let a = alg(Family::G, 2);
    let st = random_state(&a, &mut rng(3), &SampleConfig { spin_norm: Some(1.0), ..Default::default() });
    let mon = energy_monitor(&a);
    let cfg = IntegratorConfig {
        method: Method::Rk45,
        dt: 0.05,
        steps: 40,
        monitor_stride: 4,
        ..Default::default()
    };
    let tr = integrate(&st, &a, &cfg, &[&mon]).unwrap();
    assert!(tr.event.is_none());
    assert!(tr.accepted_steps >= 40);
    assert!((tr.times.last().unwrap() - 2.0).abs() < 1e-12);
    assert!(tr.relative_drift("H").unwrap() < 1e-8);
    let fixed = integrate(&st, &a, &IntegratorConfig { dt: 1e-3, steps: 2000, monitor_stride: 2000, ..Default::default() }, &[]).unwrap();
    let dev = tr.last_state().unwrap().to_flat().iter().zip(fixed.last_state().unwrap().to_flat()).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    assert!(dev < 1e-7, "{dev}");
}

#[test]
fn wall_approach_is_recorded() {
    let a = alg(Family::A, 1);
    // Free particle heading straight through the wall at u = 0.
    let st = GcsState::new(&a, vec![0.05], vec![-1.0], vec![0.0], vec![0.0]).unwrap();
    let cfg = IntegratorConfig { dt: 1e-2, steps: 100, monitor_stride: 1, floor: 1e-3, ..Default::default() };
    let tr = integrate(&st, &a, &cfg, &[]).unwrap();
    let ev = tr.event.expect("wall event");
    assert!(ev.t > 0.0 && ev.t < 0.1);
    assert!(tr.times.len() < 101);
}

#[test]
fn singular_initial_state_is_an_error() {
    let a = alg(Family::A, 1);
    let st = GcsState::new(&a, vec![0.0], vec![1.0], vec![0.0], vec![0.0]).unwrap();
    assert!(matches!(
        integrate(&st, &a, &IntegratorConfig::default(), &[]),
        Err(GcsError::Singular { .. })
    ));
}

#[test]
fn integrator_config_serializes_method_labels() {
    let cfg = IntegratorConfig { method: Method::Rk45, ..Default::default() };
    let s = serde_json::to_string(&cfg).unwrap();
    assert!(s.contains("\"rk45-adaptive\""));
    let back: IntegratorConfig = serde_json::from_str(r#"{"method":"rk4","dt":0.01}"#).unwrap();
    assert_eq!(back.method, Method::Rk4);
    assert_eq!(back.steps, IntegratorConfig::default().steps);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn hamiltonian_is_invariant_along_the_vector_field(seed in any::<u64>(), which in 0usize..4) {
        // dH/dt = ∇H · ẋ vanishes identically.
        let a = dynamic_types().swap_remove(which);
        let st = random_state(&a, &mut rng(seed), &SampleConfig::default());
        let g = GcsHamiltonian { alg: &a, floor: FLOOR }.gradient(&st).unwrap().to_flat();
        let d = eom_gcs(&st, &a, FLOOR).unwrap().to_flat();
        let rate: f64 = g.iter().zip(&d).map(|(x, y)| x * y).sum();
        let scale: f64 = g.iter().zip(&d).map(|(x, y)| (x * y).abs()).sum();
        prop_assert!(rate.abs() <= 1e-12 * scale.max(1.0));
    }
}
