//! C ABI over `gcs-core`.
//!
//! Algebras and states are opaque heap handles created by `*_new`
//! functions and released by `*_free`. Every fallible call returns a
//! [`GcsStatus`]; the message of the most recent failure on the calling
//! thread is available from [`gcs_last_error_message`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use gcs_core::dynamics::{eom_gcs, integrate, IntegratorConfig};
use gcs_core::lax::lax_residual;
use gcs_core::liealg::{ChevalleyAlgebra, Family, RepKind, Representation};
use gcs_core::phase::{hamiltonian_gcs, GcsState as CoreState, SINGULAR_FLOOR};
use gcs_core::rmatrix::{verify_rmatrix_identity, RootRange};
use gcs_core::sampling::{random_state, rng, SampleConfig};
use gcs_core::{GcsError, LieError};

/// Result of an FFI call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GcsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InvalidType = 3,
    Singular = 4,
    Pole = 5,
    BufferTooSmall = 6,
    Runtime = 7,
    Panic = 8,
}

/// Opaque simple Lie algebra together with its default representation.
pub struct GcsAlgebra {
    alg: ChevalleyAlgebra,
    rep: Representation,
}

/// Opaque phase-space point (u, v, T, S).
pub struct GcsState {
    inner: CoreState,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: impl Into<String>) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg.into());
}

fn status_of(e: &GcsError) -> GcsStatus {
    match e {
        GcsError::Lie(LieError::InvalidType { .. } | LieError::UnknownFamily(_)) => GcsStatus::InvalidType,
        GcsError::Lie(_) | GcsError::InvalidArgument(_) | GcsError::NonCompactGenerator { .. } => {
            GcsStatus::InvalidArgument
        }
        GcsError::Singular { .. } => GcsStatus::Singular,
        GcsError::Pole { .. } => GcsStatus::Pole,
        GcsError::StepRejection { .. } | GcsError::NonFinite(_) => GcsStatus::Runtime,
    }
}

fn fail(status: GcsStatus, msg: impl Into<String>) -> GcsStatus {
    set_error(msg);
    status
}

fn from_error(e: GcsError) -> GcsStatus {
    fail(status_of(&e), e.to_string())
}

/// Runs `f`, converting panics into [`GcsStatus::Panic`].
fn guard(f: impl FnOnce() -> GcsStatus) -> GcsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(GcsStatus::Panic, "internal panic"),
    }
}

unsafe fn slice<'a>(p: *const f64, n: usize) -> Option<&'a [f64]> {
    if n == 0 {
        return Some(&[]);
    }
    (!p.is_null()).then(|| std::slice::from_raw_parts(p, n))
}

unsafe fn write_out(values: &[f64], out: *mut f64, len: usize, written: *mut usize) -> GcsStatus {
    if !written.is_null() {
        *written = values.len();
    }
    if len < values.len() {
        return fail(
            GcsStatus::BufferTooSmall,
            format!("buffer holds {len} values, {} needed", values.len()),
        );
    }
    if values.is_empty() {
        return GcsStatus::Ok;
    }
    if out.is_null() {
        return fail(GcsStatus::NullPointer, "output buffer is null");
    }
    ptr::copy_nonoverlapping(values.as_ptr(), out, values.len());
    GcsStatus::Ok
}

macro_rules! deref {
    ($p:expr, $what:literal) => {
        match $p.as_ref() {
            Some(x) => x,
            None => return fail(GcsStatus::NullPointer, concat!($what, " is null")),
        }
    };
}

/// Copies the last error message of this thread into `buf` (NUL
/// terminated, truncated to `len - 1` bytes) and returns the full message
/// length in bytes, excluding the terminator.
///
/// # Safety
/// `buf` must be null or point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn gcs_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if !buf.is_null() && len > 0 {
            let n = msg.len().min(len - 1);
            ptr::copy_nonoverlapping(msg.as_ptr().cast::<c_char>(), buf, n);
            *buf.add(n) = 0;
        }
        msg.len()
    })
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn gcs_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builds the algebra of type `family` (one of 'A'..'G') and `rank`, with
/// the defining representation for classical types and the adjoint one
/// otherwise.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn gcs_algebra_new(family: c_char, rank: usize, out: *mut *mut GcsAlgebra) -> GcsStatus {
    guard(|| {
        if out.is_null() {
            return fail(GcsStatus::NullPointer, "out is null");
        }
        *out = ptr::null_mut();
        let letter = (family as u8 as char).to_string();
        let fam: Family = match letter.parse() {
            Ok(f) => f,
            Err(e) => return from_error(GcsError::Lie(e)),
        };
        let alg = match ChevalleyAlgebra::build(fam, rank) {
            Ok(a) => a,
            Err(e) => return from_error(e.into()),
        };
        let kind = if fam.is_classical() { RepKind::Defining } else { RepKind::Adjoint };
        let rep = match Representation::new(&alg, kind) {
            Ok(r) => r,
            Err(e) => return from_error(e.into()),
        };
        *out = Box::into_raw(Box::new(GcsAlgebra { alg, rep }));
        GcsStatus::Ok
    })
}

/// Releases an algebra handle. Null is ignored.
///
/// # Safety
/// `alg` must be null or a handle from [`gcs_algebra_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gcs_algebra_free(alg: *mut GcsAlgebra) {
    if !alg.is_null() {
        drop(Box::from_raw(alg));
    }
}

/// Rank l, or 0 for a null handle.
///
/// # Safety
/// `alg` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gcs_algebra_rank(alg: *const GcsAlgebra) -> usize {
    alg.as_ref().map_or(0, |a| a.alg.rank())
}

/// Number of positive roots |R+|, or 0 for a null handle.
///
/// # Safety
/// `alg` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gcs_algebra_num_positive_roots(alg: *const GcsAlgebra) -> usize {
    alg.as_ref().map_or(0, |a| a.alg.num_positive())
}

/// Dimension of the algebra, or 0 for a null handle.
///
/// # Safety
/// `alg` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gcs_algebra_dim(alg: *const GcsAlgebra) -> usize {
    alg.as_ref().map_or(0, |a| a.alg.dim())
}

/// Writes the degrees d_1..d_l into `out`. `written` receives the number
/// of degrees even when the buffer is too small.
///
/// # Safety
/// `out` must point to `len` writable values; `written` may be null.
#[no_mangle]
pub unsafe extern "C" fn gcs_algebra_degrees(
    alg: *const GcsAlgebra,
    out: *mut u32,
    len: usize,
    written: *mut usize,
) -> GcsStatus {
    guard(|| {
        let a = deref!(alg, "algebra");
        let d = a.alg.root_system().degrees();
        if !written.is_null() {
            *written = d.len();
        }
        if len < d.len() {
            return fail(GcsStatus::BufferTooSmall, format!("{} degrees do not fit in {len}", d.len()));
        }
        if out.is_null() {
            return fail(GcsStatus::NullPointer, "output buffer is null");
        }
        ptr::copy_nonoverlapping(d.as_ptr(), out, d.len());
        GcsStatus::Ok
    })
}

/// Structure constant C_{α,β} for root indices in enumeration order
/// (positive roots first, then their negatives).
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gcs_algebra_structure_constant(
    alg: *const GcsAlgebra,
    a: usize,
    b: usize,
    out: *mut i64,
) -> GcsStatus {
    guard(|| {
        let g = deref!(alg, "algebra");
        if out.is_null() {
            return fail(GcsStatus::NullPointer, "out is null");
        }
        let n = g.alg.num_roots();
        if a >= n || b >= n {
            return fail(GcsStatus::InvalidArgument, format!("root index out of range 0..{n}"));
        }
        *out = g.alg.c(a, b);
        GcsStatus::Ok
    })
}

/// Creates a state from u, v (length l) and T, S (length |R+|).
///
/// # Safety
/// Each input must point to the stated number of readable values; `out`
/// must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gcs_state_new(
    alg: *const GcsAlgebra,
    u: *const f64,
    v: *const f64,
    t: *const f64,
    s: *const f64,
    out: *mut *mut GcsState,
) -> GcsStatus {
    guard(|| {
        let a = deref!(alg, "algebra");
        if out.is_null() {
            return fail(GcsStatus::NullPointer, "out is null");
        }
        *out = ptr::null_mut();
        let (l, m) = (a.alg.rank(), a.alg.num_positive());
        let (Some(u), Some(v), Some(t), Some(s)) = (slice(u, l), slice(v, l), slice(t, m), slice(s, m)) else {
            return fail(GcsStatus::NullPointer, "state component is null");
        };
        match CoreState::new(&a.alg, u.to_vec(), v.to_vec(), t.to_vec(), s.to_vec()) {
            Ok(st) => {
                *out = Box::into_raw(Box::new(GcsState { inner: st }));
                GcsStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Draws a seeded regular state. A positive `spin_norm` rescales T and S to
/// that Euclidean norm.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gcs_state_random(
    alg: *const GcsAlgebra,
    seed: u64,
    spin_norm: f64,
    out: *mut *mut GcsState,
) -> GcsStatus {
    guard(|| {
        let a = deref!(alg, "algebra");
        if out.is_null() {
            return fail(GcsStatus::NullPointer, "out is null");
        }
        let cfg = SampleConfig {
            spin_norm: (spin_norm > 0.0).then_some(spin_norm),
            ..Default::default()
        };
        let st = random_state(&a.alg, &mut rng(seed), &cfg);
        *out = Box::into_raw(Box::new(GcsState { inner: st }));
        GcsStatus::Ok
    })
}

/// Releases a state handle. Null is ignored.
///
/// # Safety
/// `st` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gcs_state_free(st: *mut GcsState) {
    if !st.is_null() {
        drop(Box::from_raw(st));
    }
}

/// Number of flattened coordinates 2l + 2|R+|, or 0 for a null handle.
///
/// # Safety
/// `st` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gcs_state_dim(st: *const GcsState) -> usize {
    st.as_ref().map_or(0, |s| s.inner.dim())
}

/// Copies the flattened coordinates [u, v, T, S] into `out`.
///
/// # Safety
/// `out` must point to `len` writable values; `written` may be null.
#[no_mangle]
pub unsafe extern "C" fn gcs_state_get(
    st: *const GcsState,
    out: *mut f64,
    len: usize,
    written: *mut usize,
) -> GcsStatus {
    guard(|| {
        let s = deref!(st, "state");
        write_out(&s.inner.to_flat(), out, len, written)
    })
}

fn checked<'a>(alg: &'a GcsAlgebra, st: &'a GcsState) -> Result<(), GcsStatus> {
    st.inner.check_shape(&alg.alg).map_err(from_error)
}

/// Energy H at `st`.
///
/// # Safety
/// Handles must be live; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gcs_hamiltonian(alg: *const GcsAlgebra, st: *const GcsState, out: *mut f64) -> GcsStatus {
    guard(|| {
        let (a, s) = (deref!(alg, "algebra"), deref!(st, "state"));
        if out.is_null() {
            return fail(GcsStatus::NullPointer, "out is null");
        }
        if let Err(code) = checked(a, s) {
            return code;
        }
        match hamiltonian_gcs(&s.inner, &a.alg, SINGULAR_FLOOR) {
            Ok(h) => {
                *out = h;
                GcsStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Time derivative of the flattened coordinates.
///
/// # Safety
/// Handles must be live; `out` must point to `len` writable values;
/// `written` may be null.
#[no_mangle]
pub unsafe extern "C" fn gcs_eom(
    alg: *const GcsAlgebra,
    st: *const GcsState,
    out: *mut f64,
    len: usize,
    written: *mut usize,
) -> GcsStatus {
    guard(|| {
        let (a, s) = (deref!(alg, "algebra"), deref!(st, "state"));
        if let Err(code) = checked(a, s) {
            return code;
        }
        match eom_gcs(&s.inner, &a.alg, SINGULAR_FLOOR) {
            Ok(d) => write_out(&d.to_flat(), out, len, written),
            Err(e) => from_error(e),
        }
    })
}

/// Advances `st` in place by `steps` classical RK4 steps of size `dt`. On
/// a wall approach the state holds the last regular point and the call
/// returns [`GcsStatus::Singular`].
///
/// # Safety
/// Handles must be live and `st` must not be aliased during the call.
#[no_mangle]
pub unsafe extern "C" fn gcs_integrate_rk4(
    alg: *const GcsAlgebra,
    st: *mut GcsState,
    dt: f64,
    steps: usize,
) -> GcsStatus {
    guard(|| {
        let a = deref!(alg, "algebra");
        let s = match st.as_mut() {
            Some(s) => s,
            None => return fail(GcsStatus::NullPointer, "state is null"),
        };
        if !(dt > 0.0 && dt.is_finite()) {
            return fail(GcsStatus::InvalidArgument, format!("dt must be positive, got {dt}"));
        }
        if let Err(code) = checked(a, s) {
            return code;
        }
        let cfg = IntegratorConfig {
            dt,
            steps,
            monitor_stride: steps.max(1),
            ..Default::default()
        };
        match integrate(&s.inner, &a.alg, &cfg, &[]) {
            Ok(tr) => {
                if let Some(last) = tr.last_state() {
                    s.inner = last.clone();
                }
                match tr.event {
                    Some(ev) => fail(GcsStatus::Singular, format!("stopped at t = {}: {}", ev.t, ev.message)),
                    None => GcsStatus::Ok,
                }
            }
            Err(e) => from_error(e),
        }
    })
}

/// Relative residual of the Lax equation at `st`.
///
/// # Safety
/// Handles must be live; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gcs_lax_residual(alg: *const GcsAlgebra, st: *const GcsState, out: *mut f64) -> GcsStatus {
    guard(|| {
        let (a, s) = (deref!(alg, "algebra"), deref!(st, "state"));
        if out.is_null() {
            return fail(GcsStatus::NullPointer, "out is null");
        }
        if let Err(code) = checked(a, s) {
            return code;
        }
        match lax_residual(&s.inner, &a.alg, &a.rep, SINGULAR_FLOOR) {
            Ok(r) => {
                *out = r;
                GcsStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Relative residual of the r-matrix identity for the spectral Lax
/// operator at spectral parameters x and y.
///
/// # Safety
/// Handles must be live; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gcs_rmatrix_residual(
    alg: *const GcsAlgebra,
    st: *const GcsState,
    x: f64,
    y: f64,
    out: *mut f64,
) -> GcsStatus {
    guard(|| {
        let (a, s) = (deref!(alg, "algebra"), deref!(st, "state"));
        if out.is_null() {
            return fail(GcsStatus::NullPointer, "out is null");
        }
        if let Err(code) = checked(a, s) {
            return code;
        }
        match verify_rmatrix_identity(&s.inner, &a.alg, &a.rep, x, y, RootRange::AllRoots, SINGULAR_FLOOR) {
            Ok(r) => {
                *out = r;
                GcsStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Short static description of a status code.
#[no_mangle]
pub extern "C" fn gcs_status_name(status: GcsStatus) -> *const c_char {
    let s: &CStr = match status {
        GcsStatus::Ok => c"ok",
        GcsStatus::NullPointer => c"null pointer",
        GcsStatus::InvalidArgument => c"invalid argument",
        GcsStatus::InvalidType => c"invalid algebra type",
        GcsStatus::Singular => c"singular configuration",
        GcsStatus::Pole => c"spectral pole",
        GcsStatus::BufferTooSmall => c"buffer too small",
        GcsStatus::Runtime => c"runtime error",
        GcsStatus::Panic => c"internal panic",
    };
    s.as_ptr()
}
