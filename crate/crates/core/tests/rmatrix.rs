use gcs_core::lax::lax_tilde;
use gcs_core::liealg::{ChevalleyAlgebra, Family, RepKind, Representation};
use gcs_core::phase::{GcsState, PoissonStructure, SINGULAR_FLOOR};
use gcs_core::rmatrix::{
    bracket_tensor, build_r, partial_trace_second, spectral_trace_bracket, swap_operator,
    verify_m_trace, verify_rmatrix_identity, RootRange,
};
use gcs_core::sampling::{random_state, rng, SampleConfig};
use gcs_core::GcsError;
use nalgebra::DMatrix;
use rand::Rng;

const FLOOR: f64 = SINGULAR_FLOOR;

fn alg(f: Family, l: usize) -> ChevalleyAlgebra {
    ChevalleyAlgebra::build(f, l).unwrap()
}

fn defining(a: &ChevalleyAlgebra) -> Representation {
    Representation::new(a, RepKind::Defining).unwrap()
}

/// Spectral pair with x, y, x − y and x + y all at least 0.2 from zero.
fn spectral_pair<R: Rng>(r: &mut R) -> (f64, f64) {
    loop {
        let x: f64 = r.random_range(-2.0..2.0);
        let y: f64 = r.random_range(-2.0..2.0);
        if [x, y, x - y, x + y].iter().all(|z| z.abs() > 0.2) {
            return (x, y);
        }
    }
}

fn lax_matrix(st: &GcsState, a: &ChevalleyAlgebra, rep: &Representation, z: f64) -> DMatrix<f64> {
    rep.matrix(&lax_tilde(st, a, z, FLOOR).unwrap().value)
}

#[test]
fn bracket_tensor_matches_finite_difference_oracle_on_a1() {
    let a = alg(Family::A, 1);
    let rep = defining(&a);
    let n = rep.dim();
    let mut r = rng(11);
    for _ in 0..5 {
        let st = random_state(&a, &mut r, &SampleConfig::default());
        let (x, y) = spectral_pair(&mut r);
        let p = PoissonStructure::new(&a).tensor(&st);
        let h = 1e-6;
        let fd = |z: f64, k: usize| {
            let (mut sp, mut sm) = (st.clone(), st.clone());
            *sp.coord_mut(k) += h;
            *sm.coord_mut(k) -= h;
            (lax_matrix(&sp, &a, &rep, z) - lax_matrix(&sm, &a, &rep, z)) / (2.0 * h)
        };
        let dx: Vec<_> = (0..st.dim()).map(|k| fd(x, k)).collect();
        let dy: Vec<_> = (0..st.dim()).map(|k| fd(y, k)).collect();
        let mut oracle = DMatrix::zeros(n * n, n * n);
        for i in 0..st.dim() {
            for j in 0..st.dim() {
                oracle += dx[i].kronecker(&dy[j]) * p[(i, j)];
            }
        }
        let got = bracket_tensor(&st, &a, &rep, x, y, FLOOR).unwrap().value;
        let err = (&got - &oracle).norm() / oracle.norm().max(1.0);
        assert!(err < 1e-7, "bracket tensor vs oracle {err}");
    }
}

#[test]
fn swap_and_partial_trace_are_consistent() {
    let n = 3;
    let a = DMatrix::from_fn(n, n, |i, j| (i * n + j) as f64);
    let b = DMatrix::from_fn(n, n, |i, j| (i as f64) - 2.0 * (j as f64));
    let pi = swap_operator(n);
    let ab = a.kronecker(&b);
    assert_eq!(&pi * &ab * &pi, b.kronecker(&a));
    let tr = partial_trace_second(&ab, n);
    assert!((tr - &a * b.trace()).norm() < 1e-12);
}

#[test]
fn rmatrix_identity_holds_over_all_roots() {
    let mut r = rng(21);
    for a in [alg(Family::A, 1), alg(Family::A, 2), alg(Family::A, 3)] {
        let rep = defining(&a);
        for _ in 0..8 {
            let st = random_state(&a, &mut r, &SampleConfig::default());
            let (x, y) = spectral_pair(&mut r);
            let res =
                verify_rmatrix_identity(&st, &a, &rep, x, y, RootRange::AllRoots, FLOOR).unwrap();
            assert!(res < 1e-9, "{} residual {res}", a.tag());
        }
    }
}

#[test]
fn rmatrix_identity_holds_in_other_representations() {
    let mut r = rng(22);
    for a in [alg(Family::B, 2), alg(Family::C, 2), alg(Family::D, 4)] {
        let rep = defining(&a);
        let st = random_state(&a, &mut r, &SampleConfig::default());
        let (x, y) = spectral_pair(&mut r);
        let res = verify_rmatrix_identity(&st, &a, &rep, x, y, RootRange::AllRoots, FLOOR).unwrap();
        assert!(res < 1e-9, "{} residual {res}", a.tag());
    }
    let g2 = alg(Family::G, 2);
    let adj = Representation::new(&g2, RepKind::Adjoint).unwrap();
    let st = random_state(&g2, &mut r, &SampleConfig::default());
    let (x, y) = spectral_pair(&mut r);
    let res = verify_rmatrix_identity(&st, &g2, &adj, x, y, RootRange::AllRoots, FLOOR).unwrap();
    assert!(res < 1e-9, "G2 adjoint residual {res}");
}

#[test]
fn positive_roots_reading_fails() {
    let a = alg(Family::A, 2);
    let rep = defining(&a);
    let mut r = rng(23);
    let st = random_state(&a, &mut r, &SampleConfig::default());
    let (x, y) = spectral_pair(&mut r);
    let res =
        verify_rmatrix_identity(&st, &a, &rep, x, y, RootRange::PositiveRoots, FLOOR).unwrap();
    assert!(res > 1e-3, "positive-root reading unexpectedly holds: {res}");
}

#[test]
fn r_matrix_partial_trace_recovers_m() {
    let mut r = rng(24);
    for a in [alg(Family::A, 1), alg(Family::A, 2), alg(Family::A, 3)] {
        let rep = defining(&a);
        for _ in 0..5 {
            let st = random_state(&a, &mut r, &SampleConfig::default());
            let (x, y) = spectral_pair(&mut r);
            let res = verify_m_trace(&st, &a, &rep, x, y, FLOOR).unwrap();
            assert!(res < 1e-9, "{} residual {res}", a.tag());
        }
    }
}

#[test]
fn m_trace_rejects_unsupported_representation() {
    let a = alg(Family::B, 2);
    let rep = defining(&a);
    let st = random_state(&a, &mut rng(1), &SampleConfig::default());
    assert!(matches!(
        verify_m_trace(&st, &a, &rep, 0.7, 0.3, FLOOR),
        Err(GcsError::Lie(_))
    ));
}

#[test]
fn r_matrix_rejects_coinciding_spectral_parameters() {
    let a = alg(Family::A, 2);
    let rep = defining(&a);
    let st = random_state(&a, &mut rng(2), &SampleConfig::default());
    assert!(matches!(
        build_r(&st, &a, &rep, 0.5, 0.5, RootRange::AllRoots, FLOOR),
        Err(GcsError::Pole { .. })
    ));
}

#[test]
fn spectral_traces_are_in_involution() {
    let a = alg(Family::A, 2);
    let rep = defining(&a);
    let mut r = rng(25);
    for _ in 0..10 {
        let st = random_state(&a, &mut r, &SampleConfig::default());
        let (x, y) = spectral_pair(&mut r);
        for (j, k) in [(2, 2), (2, 3), (3, 3)] {
            let b = spectral_trace_bracket(&st, &a, &rep, (x, j), (y, k), FLOOR).unwrap();
            assert!(b.abs() < 1e-8, "{{tr L^{j}, tr L^{k}}} = {b}");
        }
    }
}

#[test]
fn r_matrix_matches_entrywise_resummation_on_a2() {
    let a = alg(Family::A, 2);
    let rep = defining(&a);
    let rs = a.root_system();
    let n = rep.dim();
    let mut r = rng(26);
    let st = random_state(&a, &mut r, &SampleConfig::default());
    let (x, y) = spectral_pair(&mut r);
    let coth = |z: f64| z.cosh() / z.sinh();
    let got = build_r(&st, &a, &rep, x, y, RootRange::AllRoots, FLOOR).unwrap();
    let mut want = DMatrix::zeros(n * n, n * n);
    for ai in 0..n {
        for bi in 0..n {
            for ci in 0..n {
                for di in 0..n {
                    let mut v = 0.0;
                    for j in 0..a.rank() {
                        let e = rep.cartan(j);
                        v += 0.5 * (coth(x - y) + coth(x + y)) * e[(ai, bi)] * e[(ci, di)];
                    }
                    for al in 0..a.num_roots() {
                        let w = 0.25 * rs.norm2_f64(al);
                        let cu = coth(st.u_root(&a, al));
                        let (e, f) = (rep.root(al), rep.root(rs.neg(al)));
                        v += w * (coth(x - y) + cu) * e[(ai, bi)] * f[(ci, di)];
                        v += w * (coth(x + y) + cu) * e[(ai, bi)] * e[(ci, di)];
                    }
                    want[(ai * n + ci, bi * n + di)] = v;
                }
            }
        }
    }
    assert!(got.value.iter().all(|v| v.is_finite()));
    assert!((got.value.norm() - want.norm()).abs() < 1e-12 * want.norm());
    assert!((&got.value - &want).norm() < 1e-12 * want.norm());
}

#[test]
fn cartan_coefficient_is_odd_under_argument_swap() {
    let a = alg(Family::A, 1);
    let rep = defining(&a);
    let st = GcsState::new(&a, vec![0.8], vec![0.3], vec![0.0], vec![0.0]).unwrap();
    let cartan = |x: f64, y: f64| {
        let r = build_r(&st, &a, &rep, x, y, RootRange::AllRoots, FLOOR).unwrap();
        // ρ(e_1) = diag(1, −1)/√2, so the (0,0),(0,0) entry carries ½ of the coefficient.
        2.0 * r.value[(0, 0)]
    };
    let (x, y) = (0.9, 0.4);
    let coth = |z: f64| z.cosh() / z.sinh();
    assert!((cartan(x, y) - (0.5 * (coth(x - y) + coth(x + y)))).abs() < 1e-13);
    assert!((cartan(y, x) - (0.5 * (-coth(x - y) + coth(x + y)))).abs() < 1e-13);
}

#[test]
fn bracket_tensor_is_antisymmetric_under_swap() {
    let mut r = rng(27);
    for a in [alg(Family::A, 1), alg(Family::A, 2)] {
        let rep = defining(&a);
        let pi = swap_operator(rep.dim());
        let st = random_state(&a, &mut r, &SampleConfig::default());
        let (x, y) = spectral_pair(&mut r);
        let bxy = bracket_tensor(&st, &a, &rep, x, y, FLOOR).unwrap().value;
        let byx = bracket_tensor(&st, &a, &rep, y, x, FLOOR).unwrap().value;
        let err = (&pi * &bxy * &pi + &byx).norm() / bxy.norm().max(1.0);
        assert!(err < 1e-13, "{err}");
    }
}

#[test]
fn spinless_states_reduce_to_cartan_identities() {
    let a = alg(Family::A, 2);
    let rep = defining(&a);
    let m = a.num_positive();
    let st = GcsState::new(&a, vec![0.7, -0.4], vec![0.3, 1.1], vec![0.0; m], vec![0.0; m]).unwrap();
    let (x, y) = (0.9, -0.35);
    let b = bracket_tensor(&st, &a, &rep, x, y, FLOOR).unwrap().value;
    assert!(b.norm() < 1e-14);
    let res = verify_rmatrix_identity(&st, &a, &rep, x, y, RootRange::AllRoots, FLOOR).unwrap();
    assert!(res < 1e-11, "{res}");
    let res = verify_m_trace(&st, &a, &rep, x, y, FLOOR).unwrap();
    assert!(res < 1e-12, "{res}");
}
