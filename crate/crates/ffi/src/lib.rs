//! C interface to `lrb-core`.
//!
//! Every function returns an [`LrbStatus`]. Results come back through out
//! pointers; strings are NUL-terminated UTF-8 owned by the caller and must
//! be released with [`lrb_string_free`]. After a non-OK status,
//! [`lrb_last_error`] describes what went wrong on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use lrb_core::cli::{run_grid, VerificationGrid};
use lrb_core::qnums::{q_stirling, StirlingVariant};
use lrb_core::spectra::{
    check_guard, eigenspace_dimensions, flag_algebra_size, minpoly_verify, predicted_dimension, spectral_report, Space,
};
use lrb_core::symfun::{derangement_sf, DsfDefinition};
use lrb_core::Error;

pub type LrbStatus = i32;

pub const LRB_OK: LrbStatus = 0;
/// A required pointer argument was NULL.
pub const LRB_NULL: LrbStatus = 1;
pub const LRB_INVALID_ARGUMENT: LrbStatus = 2;
/// The input is larger than the exact computation is allowed to handle.
pub const LRB_GUARD: LrbStatus = 3;
/// A computation contradicted the theory it checks, or a report failed.
pub const LRB_VERIFICATION_FAILED: LrbStatus = 4;
pub const LRB_INTERNAL: LrbStatus = 5;

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("interior NULs were replaced");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> LrbStatus {
    match e {
        Error::GuardExceeded(_) => LRB_GUARD,
        Error::NonDistinctSpectrum
        | Error::NonIntegerTrace(_)
        | Error::NotAnnihilated(_)
        | Error::NotInOrbitSpan(_)
        | Error::NotVirtualCharacter { .. } => LRB_VERIFICATION_FAILED,
        _ => LRB_INVALID_ARGUMENT,
    }
}

/// Runs `f`, translating errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<LrbStatus, (LrbStatus, String)>) -> LrbStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => status,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            LRB_INTERNAL
        }
    }
}

fn lib<T>(r: lrb_core::Result<T>) -> Result<T, (LrbStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(name: &str) -> (LrbStatus, String) {
    (LRB_NULL, format!("{name} is NULL"))
}

unsafe fn read_str<'a>(ptr: *const c_char, name: &str) -> Result<&'a str, (LrbStatus, String)> {
    if ptr.is_null() {
        return Err(null(name));
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| (LRB_INVALID_ARGUMENT, format!("{name} is not UTF-8")))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), (LrbStatus, String)> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = CString::new(s).map_err(|_| (LRB_INTERNAL, "string contains NUL".to_string()))?.into_raw();
    Ok(())
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), (LrbStatus, String)> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = value;
    Ok(())
}

/// `ℱ_n` or `ℱ_n^{(q)}`, already checked against the size guards.
pub struct LrbAlgebra {
    n: usize,
    q: Option<u32>,
}

impl LrbAlgebra {
    unsafe fn from_ptr<'a>(ptr: *const LrbAlgebra) -> Result<&'a LrbAlgebra, (LrbStatus, String)> {
        ptr.as_ref().ok_or_else(|| null("algebra"))
    }

    fn size(&self) -> u128 {
        match self.q {
            None => (0..=self.n).map(|l| ((self.n - l + 1)..=self.n).map(|k| k as u128).product::<u128>()).sum(),
            Some(p) => flag_algebra_size(self.n, p),
        }
    }
}

unsafe fn new_algebra(n: usize, q: Option<u32>, out: *mut *mut LrbAlgebra) -> LrbStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        lib(check_guard(n, q, Space::Full))?;
        *out = Box::into_raw(Box::new(LrbAlgebra { n, q }));
        Ok(LRB_OK)
    })
}

/// Creates the algebra of `ℱ_n` (injective words on `n` letters).
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lrb_algebra_new_words(n: usize, out: *mut *mut LrbAlgebra) -> LrbStatus {
    new_algebra(n, None, out)
}

/// Creates the algebra of `ℱ_n^{(q)}` (flags in `F_q^n`, `q` prime).
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lrb_algebra_new_flags(n: usize, q: u32, out: *mut *mut LrbAlgebra) -> LrbStatus {
    new_algebra(n, Some(q), out)
}

/// Releases an algebra; NULL is ignored.
///
/// # Safety
/// `algebra` must come from a constructor and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn lrb_algebra_free(algebra: *mut LrbAlgebra) {
    if !algebra.is_null() {
        drop(Box::from_raw(algebra));
    }
}

/// Number of monoid elements, the dimension of the algebra.
///
/// # Safety
/// `algebra` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lrb_algebra_dim(algebra: *const LrbAlgebra, out: *mut u64) -> LrbStatus {
    guard(|| {
        let a = LrbAlgebra::from_ptr(algebra)?;
        write(out, a.size() as u64)?;
        Ok(LRB_OK)
    })
}

/// Multiplicity of the `j`-th eigenvalue on `space` (`"full"`, `"chamber"`
/// or `"stratum:L"`), computed from the operator.
///
/// # Safety
/// `algebra` must be a live handle, `space` a NUL-terminated string and
/// `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lrb_eigenspace_dim(
    algebra: *const LrbAlgebra,
    j: usize,
    space: *const c_char,
    out: *mut i64,
) -> LrbStatus {
    guard(|| {
        let a = LrbAlgebra::from_ptr(algebra)?;
        let space: Space = lib(read_str(space, "space")?.parse())?;
        let dims = lib(eigenspace_dimensions(a.n, a.q, space))?;
        let d =
            dims.get(j).ok_or((LRB_INVALID_ARGUMENT, format!("eigenvalue index {j} exceeds {}", dims.len() - 1)))?;
        write(out, *d as i64)?;
        Ok(LRB_OK)
    })
}

/// The multiplicity the theorems predict for the same arguments.
///
/// # Safety
/// As for [`lrb_eigenspace_dim`].
#[no_mangle]
pub unsafe extern "C" fn lrb_predicted_dim(
    algebra: *const LrbAlgebra,
    j: usize,
    space: *const c_char,
    out: *mut i64,
) -> LrbStatus {
    guard(|| {
        let a = LrbAlgebra::from_ptr(algebra)?;
        let space: Space = lib(read_str(space, "space")?.parse())?;
        write(out, lib(predicted_dimension(a.n, j, a.q, space))? as i64)?;
        Ok(LRB_OK)
    })
}

/// Sets `*out` to whether `Π(X − λ_j)` is exactly the minimal polynomial
/// of `x` on the algebra.
///
/// # Safety
/// `algebra` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lrb_minpoly_verify(algebra: *const LrbAlgebra, out: *mut bool) -> LrbStatus {
    guard(|| {
        let a = LrbAlgebra::from_ptr(algebra)?;
        write(out, lib(minpoly_verify(a.n, a.q))?.pass)?;
        Ok(LRB_OK)
    })
}

/// The spectral report on `space` as JSON. Returns
/// `LRB_VERIFICATION_FAILED`, still filling `*out`, if any entry fails.
///
/// # Safety
/// `algebra` must be a live handle, `space` a NUL-terminated string and
/// `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lrb_spectrum_json(
    algebra: *const LrbAlgebra,
    space: *const c_char,
    out: *mut *mut c_char,
) -> LrbStatus {
    guard(|| {
        let a = LrbAlgebra::from_ptr(algebra)?;
        let space: Space = lib(read_str(space, "space")?.parse())?;
        let report = lib(spectral_report(a.n, a.q, space))?;
        write_string(out, serde_json::to_string(&report).expect("reports serialize"))?;
        Ok(if report.all_pass { LRB_OK } else { LRB_VERIFICATION_FAILED })
    })
}

/// `𝔡_n` in the Schur basis by definition `A`, `B`, `C` or `D`, printed
/// like `s(2,1)`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lrb_derangement_sf(n: usize, definition: c_char, out: *mut *mut c_char) -> LrbStatus {
    guard(|| {
        let def: DsfDefinition = lib(char::from(definition as u8).to_string().parse())?;
        write_string(out, lib(derangement_sf(n, def))?.to_string())?;
        Ok(LRB_OK)
    })
}

/// `S_q(n, k)` (`tilde == false`) or `S̃_q(n, k)` as a polynomial string
/// such as `2 + q`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lrb_q_stirling(n: usize, k: usize, tilde: bool, out: *mut *mut c_char) -> LrbStatus {
    guard(|| {
        let variant = if tilde { StirlingVariant::Tilde } else { StirlingVariant::Plain };
        write_string(out, q_stirling(n, k, variant).to_string())?;
        Ok(LRB_OK)
    })
}

/// Runs the verification grid and returns its JSON report. The status is
/// `LRB_VERIFICATION_FAILED` (with `*out` filled) when a check fails.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lrb_verify_json(extended: bool, out: *mut *mut c_char) -> LrbStatus {
    guard(|| {
        let grid = if extended { VerificationGrid::extended() } else { VerificationGrid::default() };
        let report = lib(run_grid(&grid))?;
        write_string(out, serde_json::to_string(&report).expect("reports serialize"))?;
        if report.all_pass {
            Ok(LRB_OK)
        } else {
            set_error("verification failed");
            Ok(LRB_VERIFICATION_FAILED)
        }
    })
}

/// Releases a string returned by this library; NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn lrb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// The last error message on this thread, or NULL. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn lrb_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null(), |s| s.as_ptr()))
}
