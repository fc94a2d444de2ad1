use std::ffi::{c_char, CStr};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use gcs_core::dynamics::eom_gcs;
use gcs_core::liealg::{ChevalleyAlgebra, Family};
use gcs_core::phase::{hamiltonian_gcs, SINGULAR_FLOOR};
use gcs_core::sampling::{random_state, rng, SampleConfig};
use gcs_ffi::*;

fn last_error() -> String {
    let mut buf = [0 as c_char; 256];
    unsafe {
        gcs_last_error_message(buf.as_mut_ptr(), buf.len());
        CStr::from_ptr(buf.as_ptr()).to_string_lossy().into_owned()
    }
}

fn algebra(family: u8, rank: usize) -> *mut GcsAlgebra {
    let mut a = ptr::null_mut();
    let st = unsafe { gcs_algebra_new(family as c_char, rank, &mut a) };
    assert_eq!(st, GcsStatus::Ok, "{}", last_error());
    a
}

fn random(a: *const GcsAlgebra, seed: u64) -> *mut GcsState {
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { gcs_state_random(a, seed, 1.0, &mut s) }, GcsStatus::Ok);
    s
}

#[test]
fn algebra_accessors_match_table_values() {
    let a = algebra(b'G', 2);
    unsafe {
        assert_eq!(gcs_algebra_rank(a), 2);
        assert_eq!(gcs_algebra_num_positive_roots(a), 6);
        assert_eq!(gcs_algebra_dim(a), 14);
        let mut d = [0u32; 2];
        let mut n = 0;
        assert_eq!(gcs_algebra_degrees(a, d.as_mut_ptr(), 2, &mut n), GcsStatus::Ok);
        assert_eq!((n, d), (2, [2, 6]));
        gcs_algebra_free(a);
    }
}

#[test]
fn invalid_types_are_rejected_with_a_message() {
    let mut a = ptr::null_mut();
    unsafe {
        assert_eq!(gcs_algebra_new(b'E' as c_char, 5, &mut a), GcsStatus::InvalidType);
        assert!(a.is_null());
        assert!(!last_error().is_empty());
        assert_eq!(gcs_algebra_new(b'Q' as c_char, 2, &mut a), GcsStatus::InvalidType);
        assert_eq!(gcs_algebra_new(b'B' as c_char, 1, &mut a), GcsStatus::InvalidType);
    }
}

#[test]
fn null_pointers_are_reported_not_dereferenced() {
    unsafe {
        assert_eq!(gcs_algebra_new(b'A' as c_char, 2, ptr::null_mut()), GcsStatus::NullPointer);
        assert_eq!(gcs_algebra_rank(ptr::null()), 0);
        assert_eq!(gcs_state_dim(ptr::null()), 0);
        let mut h = 0.0;
        assert_eq!(gcs_hamiltonian(ptr::null(), ptr::null(), &mut h), GcsStatus::NullPointer);
        assert!(last_error().contains("null"));
        gcs_algebra_free(ptr::null_mut());
        gcs_state_free(ptr::null_mut());
    }
}

#[test]
fn short_buffers_report_the_required_length() {
    let a = algebra(b'A', 2);
    let s = random(a, 1);
    unsafe {
        let mut buf = [0.0; 3];
        let mut n = 0;
        assert_eq!(gcs_state_get(s, buf.as_mut_ptr(), 3, &mut n), GcsStatus::BufferTooSmall);
        assert_eq!(n, 10);
        let mut d = [0u32; 1];
        assert_eq!(gcs_algebra_degrees(a, d.as_mut_ptr(), 1, &mut n), GcsStatus::BufferTooSmall);
        assert_eq!(n, 2);
        gcs_state_free(s);
        gcs_algebra_free(a);
    }
}

#[test]
fn error_message_truncates_and_terminates() {
    unsafe {
        let mut a = ptr::null_mut();
        gcs_algebra_new(b'Z' as c_char, 2, &mut a);
        let full = gcs_last_error_message(ptr::null_mut(), 0);
        assert!(full > 4);
        let mut buf = [1 as c_char; 4];
        assert_eq!(gcs_last_error_message(buf.as_mut_ptr(), 4), full);
        assert_eq!(buf[3], 0);
        assert_eq!(CStr::from_ptr(buf.as_ptr()).to_bytes().len(), 3);
    }
}

#[test]
fn energy_and_equations_of_motion_agree_with_core() {
    let a = algebra(b'A', 2);
    let s = random(a, 7);
    let alg = ChevalleyAlgebra::build(Family::A, 2).unwrap();
    let cfg = SampleConfig {
        spin_norm: Some(1.0),
        ..Default::default()
    };
    let core = random_state(&alg, &mut rng(7), &cfg);
    unsafe {
        let mut flat = vec![0.0; gcs_state_dim(s)];
        assert_eq!(gcs_state_get(s, flat.as_mut_ptr(), flat.len(), ptr::null_mut()), GcsStatus::Ok);
        assert_eq!(flat, core.to_flat());
        let mut h = 0.0;
        assert_eq!(gcs_hamiltonian(a, s, &mut h), GcsStatus::Ok);
        assert_eq!(h, hamiltonian_gcs(&core, &alg, SINGULAR_FLOOR).unwrap());
        let mut rates = vec![0.0; flat.len()];
        assert_eq!(gcs_eom(a, s, rates.as_mut_ptr(), rates.len(), ptr::null_mut()), GcsStatus::Ok);
        assert_eq!(rates, eom_gcs(&core, &alg, SINGULAR_FLOOR).unwrap().to_flat());
        gcs_state_free(s);
        gcs_algebra_free(a);
    }
}

#[test]
fn explicit_state_round_trips_and_integrates() {
    let a = algebra(b'A', 1);
    let (u, v, t, s) = ([1.3], [0.2], [0.4], [0.1]);
    let mut st = ptr::null_mut();
    unsafe {
        assert_eq!(
            gcs_state_new(a, u.as_ptr(), v.as_ptr(), t.as_ptr(), s.as_ptr(), &mut st),
            GcsStatus::Ok
        );
        let mut h0 = 0.0;
        gcs_hamiltonian(a, st, &mut h0);
        assert_eq!(gcs_integrate_rk4(a, st, 1e-3, 2000), GcsStatus::Ok);
        let mut h1 = 0.0;
        gcs_hamiltonian(a, st, &mut h1);
        assert!((h1 - h0).abs() < 1e-9 * h0.abs().max(1.0));
        let mut flat = [0.0; 4];
        gcs_state_get(st, flat.as_mut_ptr(), 4, ptr::null_mut());
        assert_ne!(flat[0], 1.3);
        assert_eq!(gcs_integrate_rk4(a, st, -1.0, 10), GcsStatus::InvalidArgument);
        gcs_state_free(st);
        gcs_algebra_free(a);
    }
}

#[test]
fn states_on_a_wall_fail_to_evaluate() {
    let a = algebra(b'A', 1);
    let (u, v, t, s) = ([0.0], [0.0], [0.4], [0.1]);
    let mut st = ptr::null_mut();
    unsafe {
        assert_eq!(
            gcs_state_new(a, u.as_ptr(), v.as_ptr(), t.as_ptr(), s.as_ptr(), &mut st),
            GcsStatus::Ok
        );
        let mut h = 0.0;
        assert_eq!(gcs_hamiltonian(a, st, &mut h), GcsStatus::Singular);
        assert!(!last_error().is_empty());
        gcs_state_free(st);
        gcs_algebra_free(a);
    }
}

#[test]
fn lax_and_rmatrix_residuals_are_small() {
    let a = algebra(b'B', 2);
    let s = random(a, 3);
    unsafe {
        let mut r = f64::NAN;
        assert_eq!(gcs_lax_residual(a, s, &mut r), GcsStatus::Ok);
        assert!(r < 1e-10, "{r}");
        assert_eq!(gcs_rmatrix_residual(a, s, 0.7, -0.45, &mut r), GcsStatus::Ok);
        assert!(r < 1e-9, "{r}");
        assert_eq!(gcs_rmatrix_residual(a, s, 0.5, 0.5, &mut r), GcsStatus::Pole);
        gcs_state_free(s);
        gcs_algebra_free(a);
    }
}

#[test]
fn structure_constants_are_antisymmetric() {
    let a = algebra(b'A', 2);
    unsafe {
        let (mut c01, mut c10) = (0, 0);
        assert_eq!(gcs_algebra_structure_constant(a, 0, 1, &mut c01), GcsStatus::Ok);
        gcs_algebra_structure_constant(a, 1, 0, &mut c10);
        assert_eq!(c01.abs(), 1);
        assert_eq!(c01, -c10);
        assert_eq!(gcs_algebra_structure_constant(a, 0, 99, &mut c01), GcsStatus::InvalidArgument);
        gcs_algebra_free(a);
    }
}

#[test]
fn status_names_and_version_are_static_strings() {
    unsafe {
        assert_eq!(CStr::from_ptr(gcs_status_name(GcsStatus::Pole)).to_str().unwrap(), "spectral pole");
        assert_eq!(CStr::from_ptr(gcs_version()).to_str().unwrap(), env!("CARGO_PKG_VERSION"));
    }
}

fn header() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("include/gcs.h")
}

#[test]
fn header_declares_every_entry_point() {
    let h = std::fs::read_to_string(header()).unwrap();
    for name in [
        "gcs_algebra_new",
        "gcs_algebra_free",
        "gcs_algebra_degrees",
        "gcs_algebra_structure_constant",
        "gcs_state_new",
        "gcs_state_random",
        "gcs_state_get",
        "gcs_hamiltonian",
        "gcs_eom",
        "gcs_integrate_rk4",
        "gcs_lax_residual",
        "gcs_rmatrix_residual",
        "gcs_last_error_message",
        "GCS_STATUS_BUFFER_TOO_SMALL",
    ] {
        assert!(h.contains(name), "{name} missing from header");
    }
}

const C_PROGRAM: &str = r#"
#include <stdio.h>
#include "gcs.h"
int main(void) {
    GcsAlgebra *a = NULL;
    GcsState *s = NULL;
    double h = 0.0;
    if (gcs_algebra_new('A', 2, &a) != GCS_STATUS_OK) return 1;
    if (gcs_state_random(a, 5, 1.0, &s) != GCS_STATUS_OK) return 2;
    if (gcs_hamiltonian(a, s, &h) != GCS_STATUS_OK) return 3;
    if (gcs_integrate_rk4(a, s, 1e-3, 100) != GCS_STATUS_OK) return 4;
    printf("%zu %.3f\n", gcs_state_dim(s), h);
    gcs_state_free(s);
    gcs_algebra_free(a);
    return 0;
}
"#;

/// Compiles and runs a small C client against the static library when a C
/// compiler and the archive are present.
#[test]
fn c_client_links_against_the_static_library() {
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(Path::parent).unwrap();
    let lib = profile_dir.join("libgcs_ffi.a");
    if !lib.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: no C compiler or static library");
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("main.c");
    let bin = dir.path().join("main");
    std::fs::write(&src, C_PROGRAM).unwrap();
    let status = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-I"])
        .arg(header().parent().unwrap())
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("10 "), "{text}");
}
