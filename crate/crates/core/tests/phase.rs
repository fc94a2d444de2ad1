use gcs_core::invariants::InvariantSet;
use gcs_core::liealg::{AlgebraElement, ChevalleyAlgebra, Family, RepKind, Representation};
use gcs_core::phase::{
    casimirs, eta_element, hamiltonian_cs, hamiltonian_gcs, hamiltonian_gcs_gradient,
    resolve_cs_kappa, CasimirFunction, Coordinate, FnFunction, GcsHamiltonian, GcsState,
    Gradient, PhaseFunction, PoissonStructure, SINGULAR_FLOOR,
};
use gcs_core::sampling::{random_state, rng, SampleConfig};
use gcs_core::{GcsError, Result};
use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;
use rand::Rng;

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

/// F(x) = ½xᵀQx + bᵀx with an exact gradient.
struct Quadratic {
    q: DMatrix<f64>,
    b: DVector<f64>,
}

impl Quadratic {
    fn random<R: Rng>(n: usize, r: &mut R) -> Self {
        let a = DMatrix::from_fn(n, n, |_, _| r.random_range(-1.0..1.0));
        Self {
            q: &a + a.transpose(),
            b: DVector::from_fn(n, |_, _| r.random_range(-1.0..1.0)),
        }
    }
}

impl PhaseFunction for Quadratic {
    fn value(&self, st: &GcsState) -> Result<f64> {
        let x = DVector::from_vec(st.to_flat());
        Ok(0.5 * x.dot(&(&self.q * &x)) + self.b.dot(&x))
    }

    fn gradient(&self, st: &GcsState) -> Result<Gradient> {
        let x = DVector::from_vec(st.to_flat());
        let g = &self.q * &x + &self.b;
        Ok(Gradient::from_flat(st.u.len(), st.t.len(), g.as_slice()))
    }
}

/// Product F·G with the Leibniz-rule gradient.
struct Product<'a>(&'a dyn PhaseFunction, &'a dyn PhaseFunction);

impl PhaseFunction for Product<'_> {
    fn value(&self, st: &GcsState) -> Result<f64> {
        Ok(self.0.value(st)? * self.1.value(st)?)
    }

    fn gradient(&self, st: &GcsState) -> Result<Gradient> {
        let (f, g) = (self.0.value(st)?, self.1.value(st)?);
        Ok(self.0.gradient(st)?.combine(g, &self.1.gradient(st)?, f))
    }
}

/// Linear function Σ c_k x_k given as (flat index, coefficient) terms.
struct Linear(Vec<(usize, f64)>);

impl PhaseFunction for Linear {
    fn value(&self, st: &GcsState) -> Result<f64> {
        Ok(self.0.iter().map(|&(k, c)| c * st.coord(k)).sum())
    }

    fn gradient(&self, st: &GcsState) -> Result<Gradient> {
        let mut g = vec![0.0; st.dim()];
        for &(k, c) in &self.0 {
            g[k] += c;
        }
        Ok(Gradient::from_flat(st.u.len(), st.t.len(), &g))
    }
}

#[test]
fn zero_spins_give_kinetic_energy() {
    let a = alg(Family::A, 2);
    let mut st = GcsState::zeros(&a);
    st.u = vec![0.4, 1.3];
    st.v = vec![0.7, -1.1];
    let h = hamiltonian_gcs(&st, &a, FLOOR).unwrap();
    assert!((h - 0.5 * (0.49 + 1.21)).abs() < 1e-15);
}

#[test]
fn hamiltonian_equals_half_invariant_form_of_eta() {
    for a in dynamic_types() {
        let mut r = rng(11);
        for _ in 0..100 {
            let st = random_state(&a, &mut r, &SampleConfig::default());
            let eta = eta_element(&st, &a, FLOOR).unwrap();
            let oracle = 0.5 * a.killing(&eta, &eta).unwrap();
            let h = hamiltonian_gcs(&st, &a, FLOOR).unwrap();
            assert!(
                (h - oracle).abs() <= 1e-12 * oracle.abs().max(1.0),
                "{}: {h} vs {oracle}",
                a.tag()
            );
        }
    }
}

/// Two-constant BC₁ Hamiltonian p²/2 + (m₁²+m₂²−2m₁m₂ cosh 2w)/sinh² 2w.
fn bc1_hamiltonian(w: f64, p: f64, m1: f64, m2: f64) -> f64 {
    let x = 2.0 * w;
    0.5 * p * p + (m1 * m1 + m2 * m2 - 2.0 * m1 * m2 * x.cosh()) / x.sinh().powi(2)
}

#[test]
fn rank_one_hamiltonian_is_twice_bc1() {
    let a = alg(Family::A, 1);
    let s2 = 2f64.sqrt();
    for (u1, v1, t, s) in [(0.3, 0.2, 0.7, -0.4), (1.1, -0.9, 0.25, 0.5), (-0.6, 1.4, 1.0, 1.0)] {
        let st = GcsState::new(&a, vec![u1], vec![v1], vec![t], vec![s]).unwrap();
        let h = hamiltonian_gcs(&st, &a, FLOOR).unwrap();
        let bc1 = bc1_hamiltonian(u1 / s2, v1 / s2, t / s2, s / s2);
        assert!((h - 2.0 * bc1).abs() < 1e-13 * h.abs().max(1.0), "{h} vs 2·{bc1}");
    }
}

#[test]
fn wall_configuration_is_rejected() {
    let a = alg(Family::A, 2);
    let mut st = GcsState::zeros(&a);
    st.u = vec![0.5, 0.0];
    st.t = vec![1.0, 0.0, 0.0];
    // u_α = α(u) vanishes on some root when u lies on a wall.
    let a1 = a.root_system().coords(0).to_vec();
    st.u = vec![a1[1], -a1[0]];
    match hamiltonian_gcs(&st, &a, FLOOR) {
        Err(GcsError::Singular { .. }) => {}
        other => panic!("expected singular error, got {other:?}"),
    }
}

#[test]
fn analytic_gradient_matches_finite_differences() {
    for a in dynamic_types() {
        let mut r = rng(5);
        let h = GcsHamiltonian { alg: &a, floor: FLOOR };
        for _ in 0..20 {
            let st = random_state(&a, &mut r, &SampleConfig::default());
            let exact = hamiltonian_gcs_gradient(&st, &a, FLOOR).unwrap().to_flat();
            let fd = FnFunction(|x: &GcsState| h.value(x)).gradient(&st).unwrap().to_flat();
            for (p, q) in exact.iter().zip(&fd) {
                assert!((p - q).abs() < 1e-7 * p.abs().max(1.0), "{p} vs {q}");
            }
        }
    }
}

#[test]
fn canonical_pair_bracket() {
    let a = alg(Family::A, 2);
    let ps = PoissonStructure::new(&a);
    let st = random_state(&a, &mut rng(1), &SampleConfig::default());
    let l = a.rank();
    let b = |f: usize, g: usize| ps.bracket(&st, &Coordinate(f), &Coordinate(g)).unwrap();
    for j in 0..l {
        for k in 0..l {
            let expected = if j == k { 1.0 } else { 0.0 };
            assert_eq!(b(l + j, k), expected);
            assert_eq!(b(k, l + j), -expected);
            assert_eq!(b(j, k), 0.0);
        }
    }
}

#[test]
fn the_two_spins_commute() {
    for a in dynamic_types() {
        let ps = PoissonStructure::new(&a);
        let st = random_state(&a, &mut rng(2), &SampleConfig::default());
        let (l, m) = (a.rank(), a.num_positive());
        for p in 0..m {
            for q in 0..m {
                let x = ps
                    .bracket(&st, &Coordinate(2 * l + p), &Coordinate(2 * l + m + q))
                    .unwrap();
                assert_eq!(x, 0.0);
            }
        }
    }
}

#[test]
fn a2_simple_spin_bracket() {
    let a = alg(Family::A, 2);
    let ps = PoissonStructure::new(&a);
    let rs = a.root_system();
    let st = random_state(&a, &mut rng(3), &SampleConfig::default());
    let (i, j) = (0, 1);
    let g = a.sum(i, j).expect("α1+α2 is a root");
    assert!(g < rs.num_positive());
    let l = a.rank();
    let x = ps.bracket(&st, &Coordinate(2 * l + i), &Coordinate(2 * l + j)).unwrap();
    let expected = a.n_f64(i, j) * st.t[g];
    assert!((x - expected).abs() < 1e-15);
    assert!(a.n_f64(i, j) != 0.0);
    // The difference α1 − α2 is not a root, so only the sum term contributes.
    assert!(a.sum(i, rs.neg(j)).is_none());
    // The second spin sector carries the opposite sign.
    let m = a.num_positive();
    let y = ps
        .bracket(&st, &Coordinate(2 * l + m + i), &Coordinate(2 * l + m + j))
        .unwrap();
    assert!((y + a.n_f64(i, j) * st.s[g]).abs() < 1e-15);
}

#[test]
fn spin_bracket_satisfies_jacobi_on_coordinates() {
    for a in dynamic_types() {
        let ps = PoissonStructure::new(&a);
        let st = random_state(&a, &mut rng(4), &SampleConfig::default());
        let (l, m) = (a.rank(), a.num_positive());
        for offset in [2 * l, 2 * l + m] {
            // {x_b, x_c} as a linear function of the spin coordinates.
            let inner = |b: usize, c: usize| {
                let sign = if offset == 2 * l { 1.0 } else { -1.0 };
                Linear(
                    ps.spin_terms(b, c)
                        .iter()
                        .map(|&(k, coef)| (offset + k, sign * coef))
                        .collect(),
                )
            };
            let mut worst = 0.0f64;
            for p in 0..m {
                for q in 0..m {
                    for r in 0..m {
                        let t1 = ps.bracket(&st, &Coordinate(offset + p), &inner(q, r)).unwrap();
                        let t2 = ps.bracket(&st, &Coordinate(offset + q), &inner(r, p)).unwrap();
                        let t3 = ps.bracket(&st, &Coordinate(offset + r), &inner(p, q)).unwrap();
                        worst = worst.max((t1 + t2 + t3).abs());
                    }
                }
            }
            assert!(worst < 1e-13, "{}: Jacobi residual {worst}", a.tag());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bracket_is_antisymmetric_and_leibniz(seed in any::<u64>(), which in 0usize..4) {
        let a = dynamic_types().swap_remove(which);
        let ps = PoissonStructure::new(&a);
        let mut r = rng(seed);
        let st = random_state(&a, &mut r, &SampleConfig::default());
        let n = st.dim();
        let f = Quadratic::random(n, &mut r);
        let g = Quadratic::random(n, &mut r);
        let h = Quadratic::random(n, &mut r);
        let fg = ps.bracket(&st, &f, &g).unwrap();
        let gf = ps.bracket(&st, &g, &f).unwrap();
        prop_assert!((fg + gf).abs() <= 1e-14 * fg.abs().max(1.0));
        let prod = Product(&f, &g);
        let lhs = ps.bracket(&st, &prod, &h).unwrap();
        let rhs = f.value(&st).unwrap() * ps.bracket(&st, &g, &h).unwrap()
            + g.value(&st).unwrap() * ps.bracket(&st, &f, &h).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * lhs.abs().max(1.0));
    }
}

#[test]
fn casimir_count_equals_rank_u() {
    for (f, l) in [
        (Family::A, 1),
        (Family::A, 2),
        (Family::A, 3),
        (Family::B, 2),
        (Family::C, 3),
        (Family::D, 4),
        (Family::G, 2),
        (Family::F, 4),
    ] {
        let a = alg(f, l);
        let inv = InvariantSet::default_for(&a).unwrap();
        let st = GcsState::zeros(&a);
        let c = casimirs(&st, &a, &inv).unwrap();
        assert_eq!(c.len(), a.root_system().rank_u(), "{}", a.tag());
        assert!(c.iter().all(|(_, x)| *x == 0.0));
    }
    let a1 = alg(Family::A, 1);
    let inv = InvariantSet::default_for(&a1).unwrap();
    let st = GcsState::new(&a1, vec![0.5], vec![0.0], vec![0.8], vec![0.1]).unwrap();
    let c = casimirs(&st, &a1, &inv).unwrap();
    assert_eq!(c.len(), 1);
    assert_eq!(c[0].0, 2);
}

#[test]
fn quadratic_casimir_is_the_invariant_form_of_t() {
    let a = alg(Family::A, 2);
    let rep = Representation::new(&a, RepKind::Defining).unwrap();
    let st = random_state(&a, &mut rng(8), &SampleConfig::default());
    let f = CasimirFunction { alg: &a, rep: &rep, degree: 2 };
    let t = st.t_element(&a);
    let oracle = a.killing(&t, &t).unwrap();
    assert!((f.value(&st).unwrap() - oracle).abs() < 1e-13);
}

#[test]
fn casimirs_commute_with_every_coordinate() {
    for (fam, l, kind) in [
        (Family::A, 2, RepKind::Defining),
        (Family::A, 3, RepKind::Defining),
        (Family::B, 2, RepKind::Adjoint),
        (Family::G, 2, RepKind::Adjoint),
    ] {
        let a = alg(fam, l);
        let rep = Representation::new(&a, kind).unwrap();
        let ps = PoissonStructure::new(&a);
        let mut r = rng(9);
        for degree in a.root_system().degrees().iter().copied().filter(|d| d % 2 == 0) {
            let f = CasimirFunction { alg: &a, rep: &rep, degree };
            for _ in 0..5 {
                let st = random_state(&a, &mut r, &SampleConfig::default());
                for k in 0..st.dim() {
                    let x = ps.bracket(&st, &f, &Coordinate(k)).unwrap();
                    assert!(x.abs() <= 1e-10, "{} degree {degree}: {x}", a.tag());
                }
            }
        }
    }
}

#[test]
fn casimir_gradient_matches_finite_differences() {
    let a = alg(Family::G, 2);
    let rep = Representation::new(&a, RepKind::Adjoint).unwrap();
    let st = random_state(&a, &mut rng(10), &SampleConfig::default());
    let f = CasimirFunction { alg: &a, rep: &rep, degree: 6 };
    let exact = f.gradient(&st).unwrap().to_flat();
    let fd = FnFunction(|x: &GcsState| f.value(x)).gradient(&st).unwrap().to_flat();
    for (p, q) in exact.iter().zip(&fd) {
        assert!((p - q).abs() < 1e-6 * p.abs().max(1.0), "{p} vs {q}");
    }
}

#[test]
fn cs_hamiltonian_kappa_is_minus_one_half() {
    for a in dynamic_types() {
        assert_eq!(resolve_cs_kappa(&a), -0.5);
    }
}

#[test]
fn cs_hamiltonian_without_spin_is_kinetic() {
    let a = alg(Family::A, 2);
    let scs = AlgebraElement::zero(&a);
    let h = hamiltonian_cs(&[0.3, 0.9], &[1.0, 2.0], &scs, &a, FLOOR).unwrap();
    assert!((h.value - 2.5).abs() < 1e-15);
    assert!((h.closed_form - 2.5).abs() < 1e-15);
}

#[test]
fn cs_rank_one_symmetric_spin() {
    let a = alg(Family::A, 1);
    let (u, v, s) = ([0.8], [0.3], 0.6);
    let scs = AlgebraElement::new(&a, vec![0.0], vec![s, s]).unwrap();
    let h = hamiltonian_cs(&u, &v, &scs, &a, FLOOR).unwrap();
    // Direct oracle: ½v² + ½·2·(2/(α,α))·η_α η_{−α} with (α,α) = 2.
    let ua = 2f64.sqrt() * u[0];
    let eta_p = s / (1.0 - ua.exp());
    let eta_m = s / (1.0 - (-ua).exp());
    let oracle = 0.5 * v[0] * v[0] + eta_p * eta_m;
    assert!((h.value - oracle).abs() < 1e-14);
    assert!((h.closed_form - oracle).abs() < 1e-14);
    assert!(h.closed_form < 0.5 * v[0] * v[0], "potential is negative for real symmetric spin");
}

#[test]
fn cs_closed_form_matches_invariant_form() {
    for a in dynamic_types() {
        let mut r = rng(12);
        for _ in 0..50 {
            let st = random_state(&a, &mut r, &SampleConfig::default());
            let roots: Vec<f64> = (0..a.num_roots()).map(|_| r.random_range(-1.0..1.0)).collect();
            let scs = AlgebraElement::new(&a, vec![0.0; a.rank()], roots).unwrap();
            let h = hamiltonian_cs(&st.u, &st.v, &scs, &a, FLOOR).unwrap();
            assert!(
                (h.value - h.closed_form).abs() <= 1e-12 * h.value.abs().max(1.0),
                "{}: {} vs {}",
                a.tag(),
                h.value,
                h.closed_form
            );
        }
    }
}

#[test]
fn cs_spin_with_cartan_part_is_rejected() {
    let a = alg(Family::A, 1);
    let scs = AlgebraElement::new(&a, vec![0.1], vec![1.0, 1.0]).unwrap();
    assert!(hamiltonian_cs(&[0.5], &[0.0], &scs, &a, FLOOR).is_err());
}
