//! C ABI over `confsalg`.
//!
//! Algebras are passed as opaque `ConfsalgAlgebra` handles created by
//! [`confsalg_catalog_build`] or [`confsalg_algebra_from_json`] and released
//! with [`confsalg_algebra_free`]. Every call returns a [`ConfsalgStatus`];
//! on failure a message is available from [`confsalg_last_error`] on the
//! calling thread. Strings returned through out-parameters are owned by the
//! caller and released with [`confsalg_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use confsalg::algebra::{AlgebraError, ReducedAlgebra};
use confsalg::catalog::{self, CatalogEntry, CatalogError, CatalogName};
use confsalg::construct::ConstructError;
use confsalg::reconstruct::ReconstructedAlgebra;
use confsalg::scalar::parse_scalar;

/// Status codes; the first four agree with the command-line exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConfsalgStatus {
    Ok = 0,
    /// A requested check ran and found violations.
    CheckFailed = 1,
    /// Malformed input: unknown name, bad scalar, bad JSON, non-UTF-8 text.
    InvalidInput = 2,
    /// The solver or a structural computation failed.
    SolverFailure = 3,
    /// A required pointer argument was null.
    NullPointer = 4,
    /// An internal panic was caught at the boundary.
    Panic = 5,
}

/// Axiom families for [`confsalg_algebra_verify`], combined as bit flags.
pub const CONFSALG_AXIOMS_P: u32 = 1;
pub const CONFSALG_AXIOMS_H: u32 = 2;
pub const CONFSALG_AXIOMS_C: u32 = 4;

/// Opaque handle to a reduced algebra.
pub struct ConfsalgAlgebra {
    inner: ReducedAlgebra,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).expect("nul bytes removed"));
}

struct Failure(ConfsalgStatus, String);

impl From<CatalogError> for Failure {
    fn from(e: CatalogError) -> Self {
        let status = match &e {
            CatalogError::UnknownName(_) | CatalogError::InvalidParams(_) => ConfsalgStatus::InvalidInput,
            CatalogError::Construct(ConstructError::InvalidSpec(_)) => ConfsalgStatus::InvalidInput,
            _ => ConfsalgStatus::SolverFailure,
        };
        Failure(status, e.to_string())
    }
}

impl From<AlgebraError> for Failure {
    fn from(e: AlgebraError) -> Self {
        Failure(ConfsalgStatus::InvalidInput, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(ConfsalgStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, converting errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<ConfsalgStatus, Failure>) -> ConfsalgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => s,
        Ok(Err(Failure(s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            ConfsalgStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure(ConfsalgStatus::InvalidInput, format!("{what} is not UTF-8")))
}

unsafe fn algebra<'a>(p: *const ConfsalgAlgebra) -> Result<&'a ReducedAlgebra, Failure> {
    p.as_ref().map(|a| &a.inner).ok_or_else(|| null("algebra"))
}

unsafe fn write_out<T>(out: *mut T, v: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(v);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| Failure(ConfsalgStatus::SolverFailure, "string contains nul".into()))?;
    write_out(out, c.into_raw(), "out")
}

unsafe fn write_handle(out: *mut *mut ConfsalgAlgebra, r: ReducedAlgebra) -> Result<ConfsalgStatus, Failure> {
    write_out(out, Box::into_raw(Box::new(ConfsalgAlgebra { inner: r })), "out")?;
    Ok(ConfsalgStatus::Ok)
}

/// Message of the last failed call on this thread (empty if none). The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn confsalg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Builds a catalog algebra. `name` is one of `Vir, K1, K2, K3, S2, W2, N4,
/// N4alpha, CK6`; `alpha` (scalar grammar, may be null) is accepted only for
/// `N4alpha`, where null means the symbolic parameter.
///
/// # Safety
/// `name` must be a valid C string, `alpha` null or a valid C string, and
/// `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn confsalg_catalog_build(
    name: *const c_char,
    alpha: *const c_char,
    out: *mut *mut ConfsalgAlgebra,
) -> ConfsalgStatus {
    guard(|| {
        let name: CatalogName = read_str(name, "name")?.parse()?;
        let alpha = if alpha.is_null() {
            None
        } else {
            let s = read_str(alpha, "alpha")?;
            Some(parse_scalar(s).map_err(|e| Failure(ConfsalgStatus::InvalidInput, format!("alpha: {e}")))?)
        };
        let r = CatalogEntry::new(name, alpha)?.build()?;
        write_handle(out, r)
    })
}

/// Parses an algebra from its JSON interchange form.
///
/// # Safety
/// `json` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn confsalg_algebra_from_json(json: *const c_char, out: *mut *mut ConfsalgAlgebra) -> ConfsalgStatus {
    guard(|| {
        let r = ReducedAlgebra::from_json(read_str(json, "json")?)?;
        write_handle(out, r)
    })
}

/// Writes the canonical JSON of the algebra to `*out` (free with
/// [`confsalg_string_free`]).
///
/// # Safety
/// `alg` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn confsalg_algebra_to_json(alg: *const ConfsalgAlgebra, out: *mut *mut c_char) -> ConfsalgStatus {
    guard(|| {
        write_string(out, algebra(alg)?.to_json())?;
        Ok(ConfsalgStatus::Ok)
    })
}

/// Dimension of the reduced subspace.
///
/// # Safety
/// `alg` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn confsalg_algebra_dim(alg: *const ConfsalgAlgebra, out: *mut usize) -> ConfsalgStatus {
    guard(|| {
        write_out(out, algebra(alg)?.dim(), "out")?;
        Ok(ConfsalgStatus::Ok)
    })
}

/// Runs the axiom families selected by `axioms` (bit flags
/// `CONFSALG_AXIOMS_*`) with bounds `m_max`, `n_max` and ∂-degree `d_max`.
/// Writes the number of failed instances to `*failed` (may be null) and
/// returns `CheckFailed` when it is nonzero.
///
/// # Safety
/// `alg` must be a live handle; `failed` null or a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn confsalg_algebra_verify(
    alg: *const ConfsalgAlgebra,
    axioms: u32,
    m_max: u32,
    n_max: u32,
    d_max: u32,
    failed: *mut usize,
) -> ConfsalgStatus {
    guard(|| {
        let r = algebra(alg)?;
        if axioms == 0 || axioms & !(CONFSALG_AXIOMS_P | CONFSALG_AXIOMS_H | CONFSALG_AXIOMS_C) != 0 {
            return Err(Failure(ConfsalgStatus::InvalidInput, format!("invalid axiom flags {axioms}")));
        }
        let mut bad = 0;
        if axioms & CONFSALG_AXIOMS_P != 0 {
            bad += r.check_p_axioms(m_max, n_max).total_failed();
        }
        if axioms & CONFSALG_AXIOMS_H != 0 {
            bad += r.check_h_axioms()?.total_failed();
        }
        if axioms & CONFSALG_AXIOMS_C != 0 {
            bad += ReconstructedAlgebra::new(r.clone()).check_c_axioms(m_max, n_max, d_max).total_failed();
        }
        if !failed.is_null() {
            failed.write(bad);
        }
        if bad > 0 {
            set_error(format!("{bad} axiom instances failed"));
            Ok(ConfsalgStatus::CheckFailed)
        } else {
            Ok(ConfsalgStatus::Ok)
        }
    })
}

/// Decides simplicity of a physical algebra with numeric structure constants.
///
/// # Safety
/// `alg` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn confsalg_algebra_is_simple(alg: *const ConfsalgAlgebra, out: *mut bool) -> ConfsalgStatus {
    guard(|| {
        let s = algebra(alg)?.is_simple_physical()?;
        write_out(out, s.simple, "out")?;
        Ok(ConfsalgStatus::Ok)
    })
}

/// Writes the characteristic polynomial of the V∧V Gram matrix (scalar
/// grammar in the variable `t`) to `*out`; the empty string when
/// `dim V < 2`.
///
/// # Safety
/// `alg` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn confsalg_algebra_charpoly(alg: *const ConfsalgAlgebra, out: *mut *mut c_char) -> ConfsalgStatus {
    guard(|| {
        let sig = catalog::invariant_signature(algebra(alg)?)?;
        write_string(out, sig.charpoly.map(|p| p.to_string()).unwrap_or_default())?;
        Ok(ConfsalgStatus::Ok)
    })
}

/// Releases a handle (null is ignored).
///
/// # Safety
/// `alg` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn confsalg_algebra_free(alg: *mut ConfsalgAlgebra) {
    if !alg.is_null() {
        drop(Box::from_raw(alg));
    }
}

/// Releases a string returned by this library (null is ignored).
///
/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn confsalg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
