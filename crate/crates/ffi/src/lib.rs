//! C ABI over `lienil`.
//!
//! Algebras are opaque handles. Every fallible call returns a
//! [`LienilStatus`] whose nonzero values match the CLI exit codes; the message
//! of the most recent failure on the calling thread is available from
//! [`lienil_last_error`]. Strings returned through `out` parameters are owned
//! by the caller and released with [`lienil_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use serde_json::json;

use lienil::algebra::{Algebra, Budget};
use lienil::constructions::{block_triangular_algebra, grassmann_algebra, BlockSpec, GrassmannSpec};
use lienil::error::CliError;
use lienil::field::Field;
use lienil::input::parse_spec;
use lienil::linalg::Subspace;
use lienil::report::Status;
use lienil::structure::{lie_center, radical};
use lienil::theorems::{run_full_suite, SuiteConfig, VerifyConfig, ZooEntry};

/// Result of an FFI call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LienilStatus {
    Ok = 0,
    /// Null pointer or invalid UTF-8 argument.
    InvalidArgument = 1,
    Input = 2,
    Budget = 3,
    Field = 4,
    /// A verifier reported a counterexample.
    Verification = 5,
    /// Internal panic caught at the boundary.
    Panic = 6,
}

/// Opaque algebra handle.
pub struct LienilAlgebra {
    inner: Algebra,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

enum Failure {
    Arg(String),
    Cli(CliError),
}

impl From<CliError> for Failure {
    fn from(e: CliError) -> Self {
        Failure::Cli(e)
    }
}

fn cli<E: Into<CliError>>(e: E) -> Failure {
    Failure::Cli(e.into())
}

fn guard<F: FnOnce() -> Result<(), Failure>>(f: F) -> LienilStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            LienilStatus::Ok
        }
        Ok(Err(Failure::Arg(msg))) => {
            set_error(&msg);
            LienilStatus::InvalidArgument
        }
        Ok(Err(Failure::Cli(e))) => {
            set_error(&e.to_string());
            match e {
                CliError::Input(_) => LienilStatus::Input,
                CliError::Budget(_) => LienilStatus::Budget,
                CliError::Field(_) => LienilStatus::Field,
                CliError::Verification(_) => LienilStatus::Verification,
            }
        }
        Err(_) => {
            set_error("internal panic");
            LienilStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(Failure::Arg(format!("{what} is null")));
    }
    CStr::from_ptr(s).to_str().map_err(|_| Failure::Arg(format!("{what} is not UTF-8")))
}

unsafe fn algebra<'a>(a: *const LienilAlgebra) -> Result<&'a Algebra, Failure> {
    a.as_ref().map(|h| &h.inner).ok_or_else(|| Failure::Arg("algebra handle is null".into()))
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Arg("output pointer is null".into()));
    }
    out.write(value);
    Ok(())
}

unsafe fn put_handle(out: *mut *mut LienilAlgebra, alg: Algebra) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Arg("output pointer is null".into()));
    }
    out.write(Box::into_raw(Box::new(LienilAlgebra { inner: alg })));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| Failure::Arg("string contains NUL".into()))?;
    put(out, c.into_raw())
}

fn field_for(p: u64) -> Result<Field, Failure> {
    if p == 0 {
        Ok(Field::rational())
    } else {
        Field::prime(p).map_err(|e| Failure::Cli(CliError::Input(e.to_string())))
    }
}

fn labelled_basis(alg: &Algebra, s: &Subspace) -> Vec<String> {
    s.basis_vectors().iter().map(|v| alg.format(&alg.element(v.clone()).expect("basis vector"))).collect()
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn lienil_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, or an empty string.
/// The pointer stays valid until the next `lienil_*` call on this thread.
#[no_mangle]
pub extern "C" fn lienil_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Builds an algebra from a JSON algebra spec.
///
/// # Safety
/// `json` must be a valid NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn lienil_algebra_from_json(json: *const c_char, out: *mut *mut LienilAlgebra) -> LienilStatus {
    guard(|| {
        let text = read_str(json, "json")?;
        let alg = parse_spec(text).map_err(cli)?.build().map_err(cli)?;
        put_handle(out, alg)
    })
}

/// Block upper-triangular algebra for the composition `ks[0..len]`;
/// `p = 0` selects the rationals.
///
/// # Safety
/// `ks` must point to `len` readable values and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lienil_algebra_block(
    ks: *const usize,
    len: usize,
    unital: bool,
    p: u64,
    out: *mut *mut LienilAlgebra,
) -> LienilStatus {
    guard(|| {
        if ks.is_null() {
            return Err(Failure::Arg("ks is null".into()));
        }
        let parts = std::slice::from_raw_parts(ks, len).to_vec();
        let spec = BlockSpec::new(parts, unital, field_for(p)?).map_err(cli)?;
        put_handle(out, block_triangular_algebra(&spec).map_err(cli)?)
    })
}

/// Grassmann algebra on `m` generators; `p = 0` selects the rationals.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lienil_algebra_grassmann(m: usize, p: u64, out: *mut *mut LienilAlgebra) -> LienilStatus {
    guard(|| {
        let spec = GrassmannSpec { m, field: field_for(p)? };
        put_handle(out, grassmann_algebra(&spec).map_err(cli)?)
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `a` must come from a `lienil_algebra_*` constructor and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn lienil_algebra_free(a: *mut LienilAlgebra) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// Dimension of the algebra, or 0 for a null handle.
///
/// # Safety
/// `a` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lienil_algebra_dim(a: *const LienilAlgebra) -> usize {
    a.as_ref().map_or(0, |h| h.inner.dim())
}

/// Decides L_n. On failure of the identity, `witness` (if non-null) receives
/// a string such as `(E12,E23,E34) ↦ E14`; otherwise it receives null.
///
/// # Safety
/// `a` must be a live handle, `holds` writable, `witness` null or writable.
#[no_mangle]
pub unsafe extern "C" fn lienil_satisfies_ln(
    a: *const LienilAlgebra,
    n: usize,
    holds: *mut bool,
    witness: *mut *mut c_char,
) -> LienilStatus {
    guard(|| {
        let alg = algebra(a)?;
        let verdict = alg.satisfies_ln(n, &Budget::from_env()).map_err(cli)?;
        put(holds, verdict.holds)?;
        if !witness.is_null() {
            match &verdict.witness {
                Some(w) => put_string(witness, alg.format_witness(w))?,
                None => witness.write(ptr::null_mut()),
            }
        }
        Ok(())
    })
}

/// Least n ≤ `n_max` with L_n, or 0 when there is none.
///
/// # Safety
/// `a` must be a live handle and `index` writable.
#[no_mangle]
pub unsafe extern "C" fn lienil_lie_index(a: *const LienilAlgebra, n_max: usize, index: *mut usize) -> LienilStatus {
    guard(|| {
        let alg = algebra(a)?;
        let found = alg.lie_index(n_max, &Budget::from_env()).map_err(cli)?;
        put(index, found.unwrap_or(0))
    })
}

/// The n-th Lie center as JSON `{"dim": .., "basis": [..]}`.
///
/// # Safety
/// `a` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lienil_lie_center_json(a: *const LienilAlgebra, n: usize, out: *mut *mut c_char) -> LienilStatus {
    guard(|| {
        let alg = algebra(a)?;
        let z = lie_center(alg, n, &Budget::from_env()).map_err(cli)?;
        let value = json!({ "algebra": alg.name(), "n": n, "dim": z.dim(), "basis": labelled_basis(alg, &z) });
        put_string(out, value.to_string())
    })
}

/// The radical as JSON `{"dim": .., "nilpotency_index": .., "basis": [..]}`.
///
/// # Safety
/// `a` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lienil_radical_json(a: *const LienilAlgebra, out: *mut *mut c_char) -> LienilStatus {
    guard(|| {
        let alg = algebra(a)?;
        let rad = radical(alg).map_err(cli)?;
        let value = json!({
            "algebra": alg.name(),
            "dim": rad.subspace.dim(),
            "nilpotency_index": rad.nilpotency_index,
            "basis": labelled_basis(alg, &rad.subspace),
        });
        put_string(out, value.to_string())
    })
}

/// Runs the identity verifiers on one algebra and writes the reports as a
/// JSON array. Returns `LIENIL_STATUS_VERIFICATION` (with `out` still set)
/// when any report fails.
///
/// # Safety
/// `a` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lienil_verify_json(a: *const LienilAlgebra, seed: u64, out: *mut *mut c_char) -> LienilStatus {
    guard(|| {
        let alg = algebra(a)?.clone();
        let verify = VerifyConfig { budget: Budget::from_env(), ..VerifyConfig::default() }.with_seed(seed);
        let mut config = SuiteConfig::empty(verify);
        config.zoo.push(ZooEntry::classify(alg, &verify).map_err(cli)?);
        let reports = run_full_suite(&config);
        let failed = reports.iter().filter(|r| r.status == Status::Fail).count();
        put_string(out, serde_json::to_string(&reports).expect("reports serialize"))?;
        if failed > 0 {
            return Err(Failure::Cli(CliError::Verification(format!("{failed} reports failed"))));
        }
        Ok(())
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from a `lienil_*` call and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn lienil_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
