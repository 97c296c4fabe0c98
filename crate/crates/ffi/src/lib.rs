//! C ABI over `sphtor`. Objects live behind opaque handles; every fallible
//! call returns an `int` status (0 on success, otherwise a `SPHTOR_E*` code)
//! and leaves a message for [`sphtor_last_error_message`].

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use sphtor::closure::{is_torsion_class_with, symbolic_closure, DescriptorSet, Verdict, DEFAULT_WINDOW};
use sphtor::extension::e_set;
use sphtor::hammock::{ext_dim, hom_dim};
use sphtor::io::to_json;
use sphtor::orbit::{MDiagonal, OrbitCategory};
use sphtor::tube::t1_hom_dim;
use sphtor::{Arc, Error, Weight};

pub const SPHTOR_OK: c_int = 0;
pub const SPHTOR_EWEIGHT_NO_ARC_MODEL: c_int = 1;
pub const SPHTOR_EINVALID_ARC: c_int = 2;
pub const SPHTOR_EWEIGHT_MISMATCH: c_int = 3;
pub const SPHTOR_ENO_EXTENSION: c_int = 4;
pub const SPHTOR_ENOT_IN_HAMMOCK: c_int = 5;
pub const SPHTOR_ENON_ORTHOGONAL: c_int = 6;
pub const SPHTOR_ENON_CONVERGENCE: c_int = 7;
pub const SPHTOR_EPARAMS_MISMATCH: c_int = 8;
pub const SPHTOR_ETOO_LARGE: c_int = 9;
pub const SPHTOR_EVALIDATION: c_int = 10;
pub const SPHTOR_EEMPTY_INPUT: c_int = 11;
pub const SPHTOR_ENULL_POINTER: c_int = 100;
pub const SPHTOR_EOUT_OF_RANGE: c_int = 101;
pub const SPHTOR_EPANIC: c_int = 102;

pub const SPHTOR_VERDICT_TORSION_CLASS: c_int = 0;
pub const SPHTOR_VERDICT_NOT_CLOSED: c_int = 1;
pub const SPHTOR_VERDICT_NOT_CONTRAVARIANTLY_FINITE: c_int = 2;

/// A finite set of arcs of one weight, plus any fountains produced by a closure.
pub struct SphtorArcSet {
    inner: DescriptorSet,
}

/// A validated orbit category `C_m(A_n)`.
pub struct SphtorOrbit {
    inner: OrbitCategory,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

enum Fail {
    Lib(Error),
    Null,
    Range(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        Fail::Lib(e)
    }
}

/// Runs `f`, converting errors and panics into status codes.
fn guard<F: FnOnce() -> Result<(), Fail>>(f: F) -> c_int {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error(String::new());
            SPHTOR_OK
        }
        Ok(Err(Fail::Lib(e))) => {
            set_error(e.to_string());
            e.code()
        }
        Ok(Err(Fail::Null)) => {
            set_error("null pointer argument".into());
            SPHTOR_ENULL_POINTER
        }
        Ok(Err(Fail::Range(msg))) => {
            set_error(msg);
            SPHTOR_EOUT_OF_RANGE
        }
        Err(_) => {
            set_error("internal panic".into());
            SPHTOR_EPANIC
        }
    }
}

unsafe fn write<T>(out: *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail::Null);
    }
    *out = v;
    Ok(())
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref().ok_or(Fail::Null)
}

/// Message for the last failing call on this thread; empty after a success.
/// The pointer stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn sphtor_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Frees a string returned by this library.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn sphtor_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// 1 if `{x, y}` is an admissible arc for weight `w`, else 0.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sphtor_is_admissible(w: i64, x: i64, y: i64, out: *mut c_int) -> c_int {
    guard(|| write(out, sphtor::arc::is_admissible(Weight(w), x, y)? as c_int))
}

/// `dim Hom(a, b)` for arcs `a = {a0, a1}`, `b = {b0, b1}`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sphtor_hom_dim(w: i64, a0: i64, a1: i64, b0: i64, b1: i64, out: *mut u32) -> c_int {
    guard(|| {
        let (a, b) = (Arc::new(Weight(w), a0, a1)?, Arc::new(Weight(w), b0, b1)?);
        write(out, hom_dim(&a, &b)?)
    })
}

/// `dim Ext^1(b, a)`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sphtor_ext_dim(w: i64, b0: i64, b1: i64, a0: i64, a1: i64, out: *mut u32) -> c_int {
    guard(|| {
        let (a, b) = (Arc::new(Weight(w), a0, a1)?, Arc::new(Weight(w), b0, b1)?);
        write(out, ext_dim(&b, &a)?)
    })
}

/// Creates an empty arc set.
///
/// # Safety
/// `out` must be a valid pointer; free the result with [`sphtor_arcset_free`].
#[no_mangle]
pub unsafe extern "C" fn sphtor_arcset_new(w: i64, out: *mut *mut SphtorArcSet) -> c_int {
    guard(|| {
        let inner = DescriptorSet::finite(Weight::arc_model(w)?, [])?;
        write(out, Box::into_raw(Box::new(SphtorArcSet { inner })))
    })
}

/// # Safety
/// `set` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn sphtor_arcset_free(set: *mut SphtorArcSet) {
    if !set.is_null() {
        drop(Box::from_raw(set));
    }
}

/// Adds the arc `{x, y}`.
///
/// # Safety
/// `set` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn sphtor_arcset_add(set: *mut SphtorArcSet, x: i64, y: i64) -> c_int {
    guard(|| {
        let s = set.as_mut().ok_or(Fail::Null)?;
        let a = Arc::new(s.inner.w, x, y)?;
        if !s.inner.contains(&a) {
            s.inner.arcs.insert(a);
        }
        Ok(())
    })
}

/// Number of finite arcs (fountains are not counted).
///
/// # Safety
/// `set` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn sphtor_arcset_len(set: *const SphtorArcSet, out: *mut usize) -> c_int {
    guard(|| write(out, deref(set)?.inner.arcs.len()))
}

/// Number of fountains.
///
/// # Safety
/// `set` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn sphtor_arcset_fountain_count(set: *const SphtorArcSet, out: *mut usize) -> c_int {
    guard(|| write(out, deref(set)?.inner.fountains.len()))
}

/// The `index`-th finite arc in sorted order, as its endpoints `(t, u)`.
///
/// # Safety
/// `set` must be a live handle; `t` and `u` valid.
#[no_mangle]
pub unsafe extern "C" fn sphtor_arcset_get(set: *const SphtorArcSet, index: usize, t: *mut i64, u: *mut i64) -> c_int {
    guard(|| {
        let s = deref(set)?;
        let a = s.inner.arcs.iter().nth(index).ok_or_else(|| {
            Fail::Range(format!("index {index} out of range for {} arcs", s.inner.arcs.len()))
        })?;
        write(t, a.t())?;
        write(u, a.u())
    })
}

/// Middle terms of extensions between two arcs, in both directions.
///
/// # Safety
/// `out` must be valid; free the result with [`sphtor_arcset_free`].
#[no_mangle]
pub unsafe extern "C" fn sphtor_e_set(
    w: i64,
    a0: i64,
    a1: i64,
    b0: i64,
    b1: i64,
    out: *mut *mut SphtorArcSet,
) -> c_int {
    guard(|| {
        let w = Weight(w);
        let (a, b) = (Arc::new(w, a0, a1)?, Arc::new(w, b0, b1)?);
        let inner = DescriptorSet::finite(w, e_set(&a, &b)?)?;
        write(out, Box::into_raw(Box::new(SphtorArcSet { inner })))
    })
}

/// Extension closure of `set` as a new handle.
///
/// # Safety
/// `set` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn sphtor_arcset_closure(set: *const SphtorArcSet, out: *mut *mut SphtorArcSet) -> c_int {
    guard(|| {
        let inner = symbolic_closure(&deref(set)?.inner)?;
        write(out, Box::into_raw(Box::new(SphtorArcSet { inner })))
    })
}

/// Torsion-class verdict, one of the `SPHTOR_VERDICT_*` values.
///
/// # Safety
/// `set` must be a live handle and `verdict` valid.
#[no_mangle]
pub unsafe extern "C" fn sphtor_arcset_torsion_verdict(set: *const SphtorArcSet, verdict: *mut c_int) -> c_int {
    guard(|| {
        let r = is_torsion_class_with(&deref(set)?.inner, DEFAULT_WINDOW)?;
        let v = match r.verdict {
            Verdict::TorsionClass => SPHTOR_VERDICT_TORSION_CLASS,
            Verdict::NotClosed { .. } => SPHTOR_VERDICT_NOT_CLOSED,
            Verdict::NotContravariantlyFinite { .. } => SPHTOR_VERDICT_NOT_CONTRAVARIANTLY_FINITE,
        };
        write(verdict, v)
    })
}

/// JSON document of the set; free with [`sphtor_string_free`].
///
/// # Safety
/// `set` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn sphtor_arcset_to_json(set: *const SphtorArcSet, out: *mut *mut c_char) -> c_int {
    guard(|| {
        let s = CString::new(to_json(&deref(set)?.inner)).expect("JSON has no NUL");
        write(out, s.into_raw())
    })
}

/// `dim Hom(X, Y)` in the tube category for `X = Σ^{a_shift} X_{a_level}`.
#[no_mangle]
pub extern "C" fn sphtor_t1_hom_dim(a_shift: i64, a_level: u64, b_shift: i64, b_level: u64) -> u64 {
    use sphtor::tube::TubeObject;
    t1_hom_dim(&TubeObject::new(a_shift, a_level), &TubeObject::new(b_shift, b_level))
}

/// Builds and validates `C_m(A_n)`.
///
/// # Safety
/// `out` must be valid; free the result with [`sphtor_orbit_free`].
#[no_mangle]
pub unsafe extern "C" fn sphtor_orbit_new(n: i64, m: i64, out: *mut *mut SphtorOrbit) -> c_int {
    guard(|| {
        let inner = OrbitCategory::new(n, m)?;
        write(out, Box::into_raw(Box::new(SphtorOrbit { inner })))
    })
}

/// # Safety
/// `orbit` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn sphtor_orbit_free(orbit: *mut SphtorOrbit) {
    if !orbit.is_null() {
        drop(Box::from_raw(orbit));
    }
}

/// Number of indecomposables.
///
/// # Safety
/// `orbit` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn sphtor_orbit_len(orbit: *const SphtorOrbit, out: *mut usize) -> c_int {
    guard(|| write(out, deref(orbit)?.inner.len()))
}

/// m-diagonal `{i, j}` of the `index`-th indecomposable.
///
/// # Safety
/// `orbit` must be a live handle; `i` and `j` valid.
#[no_mangle]
pub unsafe extern "C" fn sphtor_orbit_diagonal(orbit: *const SphtorOrbit, index: usize, i: *mut i64, j: *mut i64) -> c_int {
    guard(|| {
        let c = &deref(orbit)?.inner;
        let o = c
            .objects()
            .get(index)
            .ok_or_else(|| Fail::Range(format!("index {index} out of range for {} objects", c.len())))?;
        let d = c.diagonal(o);
        write(i, d.i())?;
        write(j, d.j())
    })
}

unsafe fn orbit_pair<'a>(
    orbit: *const SphtorOrbit,
    a: [i64; 2],
    b: [i64; 2],
) -> Result<(&'a OrbitCategory, sphtor::orbit::OrbitIndec, sphtor::orbit::OrbitIndec), Fail> {
    let c: &'a OrbitCategory = &deref(orbit)?.inner;
    let obj = |v: [i64; 2]| -> Result<_, Fail> {
        let d = MDiagonal::try_from(v).map_err(|e| Fail::Lib(Error::ValidationFailure(e)))?;
        Ok(c.object(&d)?)
    };
    Ok((c, obj(a)?, obj(b)?))
}

/// `dim Hom(a, b)` between m-diagonals.
///
/// # Safety
/// `orbit` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn sphtor_orbit_hom(
    orbit: *const SphtorOrbit,
    ai: i64,
    aj: i64,
    bi: i64,
    bj: i64,
    out: *mut u64,
) -> c_int {
    guard(|| {
        let (c, a, b) = orbit_pair(orbit, [ai, aj], [bi, bj])?;
        write(out, c.hom(&a, &b)?)
    })
}

/// `dim Ext^1(b, a)` between m-diagonals.
///
/// # Safety
/// `orbit` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn sphtor_orbit_ext(
    orbit: *const SphtorOrbit,
    bi: i64,
    bj: i64,
    ai: i64,
    aj: i64,
    out: *mut u64,
) -> c_int {
    guard(|| {
        let (c, a, b) = orbit_pair(orbit, [ai, aj], [bi, bj])?;
        write(out, c.ext(&b, &a)?)
    })
}

/// Number of torsion classes; fails with `SPHTOR_ETOO_LARGE` past 16 indecomposables.
///
/// # Safety
/// `orbit` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn sphtor_orbit_torsion_count(orbit: *const SphtorOrbit, out: *mut usize) -> c_int {
    guard(|| write(out, deref(orbit)?.inner.torsion_enumerate()?.len()))
}
