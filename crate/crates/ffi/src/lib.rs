//! C ABI over the cubeperm library. Every entry point returns a CpStatus,
//! never unwinds across the boundary, and reports detail through a
//! thread-local message readable with cp_last_error_message. Handles are
//! opaque; strings returned through out-parameters are owned by the
//! caller and released with cp_string_free.
//!
//! All pointer-taking functions are unsafe: they defend against null but
//! cannot detect dangling or misaligned pointers, so the caller carries
//! the usual C contract.

#![warn(unsafe_op_in_unsafe_fn)]

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use cubeperm::render::{render_range, render_report, OutputFormat};
use cubeperm::verify::{
    audit_prime, audit_range, build_context, AuditOptions, PrimeContext, Scope,
};
use cubeperm::Error;

/// Outcome of a call through the C interface.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CpStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// An argument was outside the domain of the operation.
    InvalidInput = 2,
    /// The modulus argument is not prime.
    NotPrime = 3,
    /// The prime is not in the residue class the operation needs.
    WrongResidueClass = 4,
    /// The generator argument does not generate the multiplicative group.
    NotPrimitiveRoot = 5,
    /// The requested quantity does not exist for this prime.
    NotDefined = 6,
    /// An internal invariant failed; report this as a bug.
    InternalError = 7,
}

/// Opaque bundle of everything computed for one prime and generator.
pub struct CpContext {
    inner: PrimeContext,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: &str) {
    let owned = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(owned));
}

fn clear_last_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

fn status_of(err: &Error) -> CpStatus {
    match err {
        Error::NotPrime(_) => CpStatus::NotPrime,
        Error::WrongResidueClass { .. } => CpStatus::WrongResidueClass,
        Error::NotPrimitiveRoot { .. } => CpStatus::NotPrimitiveRoot,
        Error::TooLarge(_)
        | Error::PrimeTooSmall(_)
        | Error::ZeroDivisor
        | Error::ZeroK
        | Error::NotCoprimeToThree(_)
        | Error::NotPrimary(_) => CpStatus::InvalidInput,
        _ => CpStatus::InternalError,
    }
}

fn fail(err: &Error) -> CpStatus {
    set_last_error(&err.to_string());
    status_of(err)
}

/// Runs the body with panics converted to InternalError so no unwind can
/// cross the C boundary.
fn guarded(f: impl FnOnce() -> CpStatus) -> CpStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => {
            set_last_error("internal panic");
            CpStatus::InternalError
        }
    }
}

fn resolve_generator(g: u64) -> Option<u64> {
    if g == 0 {
        None
    } else {
        Some(g)
    }
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> CpStatus {
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            CpStatus::Ok
        }
        Err(_) => {
            set_last_error("rendered output contained an interior NUL byte");
            CpStatus::InternalError
        }
    }
}

/// Builds the context for prime p. Pass g = 0 to use the smallest
/// generator; otherwise g must be a primitive root mod p. On success the
/// handle is written to out and must be released with cp_context_free.
///
/// # Safety
/// out must be null or valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn cp_context_new(p: u64, g: u64, out: *mut *mut CpContext) -> CpStatus {
    guarded(|| {
        clear_last_error();
        if out.is_null() {
            set_last_error("out pointer is null");
            return CpStatus::NullPointer;
        }
        match build_context(p, resolve_generator(g)) {
            Ok(inner) => {
                let handle = Box::new(CpContext { inner });
                unsafe { *out = Box::into_raw(handle) };
                CpStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Releases a context handle. Null is allowed and ignored.
///
/// # Safety
/// ctx must be null or a handle from cp_context_new that has not been
/// freed yet.
#[no_mangle]
pub unsafe extern "C" fn cp_context_free(ctx: *mut CpContext) {
    if !ctx.is_null() {
        drop(unsafe { Box::from_raw(ctx) });
    }
}

/// The prime of the context, or 0 when ctx is null.
///
/// # Safety
/// ctx must be null or a live handle from cp_context_new.
#[no_mangle]
pub unsafe extern "C" fn cp_context_p(ctx: *const CpContext) -> u64 {
    if ctx.is_null() {
        return 0;
    }
    unsafe { &*ctx }.inner.p
}

/// (p - 1) / 3, the number of cubes mod p, or 0 when ctx is null.
///
/// # Safety
/// ctx must be null or a live handle from cp_context_new.
#[no_mangle]
pub unsafe extern "C" fn cp_context_n(ctx: *const CpContext) -> u64 {
    if ctx.is_null() {
        return 0;
    }
    unsafe { &*ctx }.inner.n
}

/// The generator the context was built with, or 0 when ctx is null.
///
/// # Safety
/// ctx must be null or a live handle from cp_context_new.
#[no_mangle]
pub unsafe extern "C" fn cp_context_generator(ctx: *const CpContext) -> u64 {
    if ctx.is_null() {
        return 0;
    }
    unsafe { &*ctx }.inner.g
}

/// The cube root of unity mod p the chosen prime maps omega to, or 0
/// when ctx is null.
///
/// # Safety
/// ctx must be null or a live handle from cp_context_new.
#[no_mangle]
pub unsafe extern "C" fn cp_context_omega(ctx: *const CpContext) -> u64 {
    if ctx.is_null() {
        return 0;
    }
    unsafe { &*ctx }.inner.w
}

/// Coordinates a, b of the chosen prime a + b*omega above p.
///
/// # Safety
/// ctx must be null or a live handle from cp_context_new; a and b must
/// be null or valid for writing one i64 each.
#[no_mangle]
pub unsafe extern "C" fn cp_context_prime_coords(
    ctx: *const CpContext,
    a: *mut i64,
    b: *mut i64,
) -> CpStatus {
    guarded(|| {
        clear_last_error();
        if ctx.is_null() || a.is_null() || b.is_null() {
            set_last_error("ctx, a and b must be non-null");
            return CpStatus::NullPointer;
        }
        let pi = unsafe { &*ctx }.inner.pi;
        unsafe {
            *a = pi.a;
            *b = pi.b;
        }
        CpStatus::Ok
    })
}

/// Normalized (r, s) with r^2 + 3 s^2 = 4p for this context's generator.
///
/// # Safety
/// ctx must be null or a live handle from cp_context_new; r and s must
/// be null or valid for writing one i64 each.
#[no_mangle]
pub unsafe extern "C" fn cp_context_form(
    ctx: *const CpContext,
    r: *mut i64,
    s: *mut i64,
) -> CpStatus {
    guarded(|| {
        clear_last_error();
        if ctx.is_null() || r.is_null() || s.is_null() {
            set_last_error("ctx, r and s must be non-null");
            return CpStatus::NullPointer;
        }
        let rep = unsafe { &*ctx }.inner.rep;
        unsafe {
            *r = rep.r;
            *s = rep.s;
        }
        CpStatus::Ok
    })
}

/// The four residue counts delta, alpha, beta, gamma of the context.
///
/// # Safety
/// ctx must be null or a live handle from cp_context_new; the four count
/// pointers must be null or valid for writing one u64 each.
#[no_mangle]
pub unsafe extern "C" fn cp_context_counts(
    ctx: *const CpContext,
    delta: *mut u64,
    alpha: *mut u64,
    beta: *mut u64,
    gamma: *mut u64,
) -> CpStatus {
    guarded(|| {
        clear_last_error();
        if ctx.is_null() || delta.is_null() || alpha.is_null() || beta.is_null() || gamma.is_null()
        {
            set_last_error("ctx and all four count pointers must be non-null");
            return CpStatus::NullPointer;
        }
        let counts = unsafe { &*ctx }.inner.counts;
        unsafe {
            *delta = counts.delta;
            *alpha = counts.alpha;
            *beta = counts.beta;
            *gamma = counts.gamma;
        }
        CpStatus::Ok
    })
}

/// Class number h(-p); defined only when p = 3 mod 4, otherwise
/// NotDefined.
///
/// # Safety
/// ctx must be null or a live handle from cp_context_new; out must be
/// null or valid for writing one u64.
#[no_mangle]
pub unsafe extern "C" fn cp_context_class_number(ctx: *const CpContext, out: *mut u64) -> CpStatus {
    guarded(|| {
        clear_last_error();
        if ctx.is_null() || out.is_null() {
            set_last_error("ctx and out must be non-null");
            return CpStatus::NullPointer;
        }
        match unsafe { &*ctx }.inner.h {
            Some(h) => {
                unsafe { *out = h };
                CpStatus::Ok
            }
            None => {
                set_last_error("class number is tracked only for p = 3 mod 4");
                CpStatus::NotDefined
            }
        }
    })
}

/// Sign (+1 or -1) of the permutation taking the ascending cubes mod p
/// to the sequence of successive cube powers of g.
///
/// # Safety
/// out must be null or valid for writing one i32.
#[no_mangle]
pub unsafe extern "C" fn cp_permutation_sign(p: u64, g: u64, out: *mut i32) -> CpStatus {
    guarded(|| {
        clear_last_error();
        if out.is_null() {
            set_last_error("out pointer is null");
            return CpStatus::NullPointer;
        }
        match cubeperm::permsign::build_cube_permutation(p, g) {
            Ok(record) => {
                unsafe { *out = record.sign };
                CpStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Sign of x -> x^3 on the nonzero residues, for p = 2 mod 3, p > 2.
/// The brute-force sign and the closed form are both computed and must
/// agree.
///
/// # Safety
/// out must be null or valid for writing one i32.
#[no_mangle]
pub unsafe extern "C" fn cp_cube_map_sign(p: u64, out: *mut i32) -> CpStatus {
    guarded(|| {
        clear_last_error();
        if out.is_null() {
            set_last_error("out pointer is null");
            return CpStatus::NullPointer;
        }
        match cubeperm::permsign::cube_map_sign(p) {
            Ok((brute, formula)) => {
                if brute != formula {
                    set_last_error("cube map sign: brute force and closed form disagree");
                    return CpStatus::InternalError;
                }
                unsafe { *out = formula };
                CpStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Class number h(-p) for p = 3 mod 4, p > 3.
///
/// # Safety
/// out must be null or valid for writing one u64.
#[no_mangle]
pub unsafe extern "C" fn cp_class_number(p: u64, out: *mut u64) -> CpStatus {
    guarded(|| {
        clear_last_error();
        if out.is_null() {
            set_last_error("out pointer is null");
            return CpStatus::NullPointer;
        }
        match cubeperm::binform::class_number(p) {
            Ok(h) => {
                unsafe { *out = h };
                CpStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Whether 3 is a cube mod p, decided by the normalized form of 4p.
/// Pass g = 0 to use the smallest generator.
///
/// # Safety
/// out must be null or valid for writing one bool.
#[no_mangle]
pub unsafe extern "C" fn cp_three_is_cube(p: u64, g: u64, out: *mut bool) -> CpStatus {
    guarded(|| {
        clear_last_error();
        if out.is_null() {
            set_last_error("out pointer is null");
            return CpStatus::NullPointer;
        }
        let g = match resolve_generator(g) {
            Some(g) => Ok(g),
            None => cubeperm::modular::smallest_primitive_root(p),
        };
        match g.and_then(|g| cubeperm::binform::three_is_cube(p, g)) {
            Ok(answer) => {
                unsafe { *out = answer };
                CpStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Full audit report for one prime as a JSON document. Pass g = 0 to use
/// the smallest generator. The returned string is released with
/// cp_string_free.
///
/// # Safety
/// out must be null or valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn cp_report_json(p: u64, g: u64, out: *mut *mut c_char) -> CpStatus {
    guarded(|| {
        clear_last_error();
        if out.is_null() {
            set_last_error("out pointer is null");
            return CpStatus::NullPointer;
        }
        let rendered = audit_prime(p, resolve_generator(g))
            .and_then(|report| render_report(&report, OutputFormat::Json));
        match rendered {
            Ok(s) => unsafe { write_string(out, s) },
            Err(e) => fail(&e),
        }
    })
}

/// Range audit up to max_p (suites and reports) as a JSON document.
/// jobs = 1 runs serially; higher values parallelize per prime without
/// changing the output bytes. The returned string is released with
/// cp_string_free.
///
/// # Safety
/// out must be null or valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn cp_verify_json(max_p: u64, jobs: u32, out: *mut *mut c_char) -> CpStatus {
    guarded(|| {
        clear_last_error();
        if out.is_null() {
            set_last_error("out pointer is null");
            return CpStatus::NullPointer;
        }
        if jobs == 0 {
            set_last_error("jobs must be at least 1");
            return CpStatus::InvalidInput;
        }
        let options = AuditOptions {
            scope: Scope::All,
            jobs: jobs as usize,
        };
        let rendered = audit_range(5, max_p, &options)
            .and_then(|summary| render_range(&summary, OutputFormat::Json));
        match rendered {
            Ok(s) => unsafe { write_string(out, s) },
            Err(e) => fail(&e),
        }
    })
}

/// Releases a string returned by this library. Null is allowed and
/// ignored.
///
/// # Safety
/// s must be null or a string returned by this library that has not been
/// freed yet.
#[no_mangle]
pub unsafe extern "C" fn cp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Static name of a status code, e.g. "ok" or "not_prime".
#[no_mangle]
pub extern "C" fn cp_status_name(status: CpStatus) -> *const c_char {
    let name: &'static [u8] = match status {
        CpStatus::Ok => b"ok\0",
        CpStatus::NullPointer => b"null_pointer\0",
        CpStatus::InvalidInput => b"invalid_input\0",
        CpStatus::NotPrime => b"not_prime\0",
        CpStatus::WrongResidueClass => b"wrong_residue_class\0",
        CpStatus::NotPrimitiveRoot => b"not_primitive_root\0",
        CpStatus::NotDefined => b"not_defined\0",
        CpStatus::InternalError => b"internal_error\0",
    };
    name.as_ptr() as *const c_char
}

/// Copies the calling thread's most recent error message into buf
/// (truncated to cap - 1 bytes, always NUL-terminated when cap > 0) and
/// returns the full message length in bytes, or 0 when there is none.
/// Call with buf = NULL to query the length alone.
///
/// # Safety
/// buf must be null or valid for writing cap bytes.
#[no_mangle]
pub unsafe extern "C" fn cp_last_error_message(buf: *mut c_char, cap: usize) -> usize {
    LAST_ERROR.with(|slot| {
        let slot = slot.borrow();
        let Some(msg) = slot.as_ref() else {
            return 0;
        };
        let bytes = msg.as_bytes();
        if !buf.is_null() && cap > 0 {
            let n = bytes.len().min(cap - 1);
            unsafe {
                std::ptr::copy_nonoverlapping(bytes.as_ptr() as *const c_char, buf, n);
                *buf.add(n) = 0;
            }
        }
        bytes.len()
    })
}
