//! C interface to `eulersum`.
//!
//! Every fallible function returns an [`EsStatus`] and writes its result
//! through an out pointer. On failure the message is kept per thread and
//! can be read with [`es_last_error_message`]. Panics never cross the
//! boundary; they surface as `ES_STATUS_PANIC`.
//!
//! Strings returned by the library are owned by the caller and released
//! with [`es_string_free`]. Handles are released with their `_free`
//! function; passing NULL to any `_free` function is a no-op.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use eulersum::catalog::{self, ReportFormat, VerificationReport, VerifyOptions};
use eulersum::closed_form::{cf_eval, ClosedForm};
use eulersum::specfun;
use eulersum::Error;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EsStatus {
    Ok = 0,
    Domain = 1,
    NoConvergence = 2,
    Overflow = 3,
    UnknownId = 4,
    ValidityViolation = 5,
    TruncationTooSmall = 6,
    Config = 7,
    NullPointer = 8,
    InvalidUtf8 = 9,
    Panic = 10,
}

impl From<&Error> for EsStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Domain { .. } => EsStatus::Domain,
            Error::NoConvergence(_) => EsStatus::NoConvergence,
            Error::Overflow(_) => EsStatus::Overflow,
            Error::UnknownId(_) => EsStatus::UnknownId,
            Error::ValidityViolation(_) => EsStatus::ValidityViolation,
            Error::TruncationTooSmall { .. } => EsStatus::TruncationTooSmall,
            Error::Config(_) => EsStatus::Config,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

// Internal failure carrying the status to report.
struct Fail(EsStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(EsStatus::from(&e), e.to_string())
    }
}

fn guard<F: FnOnce() -> Result<(), Fail>>(f: F) -> EsStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => EsStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_string());
            set_error(format!("internal panic: {msg}"));
            EsStatus::Panic
        }
    }
}

fn null(what: &str) -> Fail {
    Fail(EsStatus::NullPointer, format!("{what} is NULL"))
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    unsafe { out.write(value) };
    Ok(())
}

// Boxes `value` into a handle only once `out` is known to be writable, so a
// NULL out pointer never leaks.
unsafe fn give<T>(out: *mut *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    unsafe { out.write(Box::into_raw(Box::new(value))) };
    Ok(())
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(null(what));
    }
    unsafe { CStr::from_ptr(s) }
        .to_str()
        .map_err(|_| Fail(EsStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).unwrap_or_default().into_raw()
}

/// Length in bytes of the calling thread's last error message, excluding
/// the terminator; 0 if the last call succeeded.
#[no_mangle]
pub extern "C" fn es_last_error_length() -> usize {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(0, |c| c.as_bytes().len()))
}

/// Copies the last error message (NUL-terminated, truncated to fit) into
/// `buf`. Returns the full message length, like `snprintf`.
///
/// # Safety
/// `buf` must be NULL or point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn es_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let e = e.borrow();
        let bytes = e.as_ref().map_or(&[][..], |c| c.as_bytes());
        if !buf.is_null() && len > 0 {
            let n = bytes.len().min(len - 1);
            unsafe {
                ptr::copy_nonoverlapping(bytes.as_ptr().cast::<c_char>(), buf, n);
                *buf.add(n) = 0;
            }
        }
        bytes.len()
    })
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn es_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

fn special(out: *mut f64, f: impl FnOnce() -> eulersum::Result<f64>) -> EsStatus {
    guard(|| {
        let v = f()?;
        unsafe { write(out, v) }
    })
}

/// ψ(x).
///
/// # Safety
/// `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn es_digamma(x: f64, out: *mut f64) -> EsStatus {
    special(out, || specfun::digamma(x))
}

/// ψ′(x).
///
/// # Safety
/// `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn es_trigamma(x: f64, out: *mut f64) -> EsStatus {
    special(out, || specfun::trigamma(x))
}

/// ψ⁽ⁿ⁾(x).
///
/// # Safety
/// `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn es_polygamma(n: u32, x: f64, out: *mut f64) -> EsStatus {
    special(out, || specfun::polygamma(n, x))
}

/// log Γ(x) for x > 0.
///
/// # Safety
/// `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn es_ln_gamma(x: f64, out: *mut f64) -> EsStatus {
    special(out, || specfun::ln_gamma(x))
}

/// ζ(m) at an integer m ≠ 1.
///
/// # Safety
/// `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn es_zeta(m: u32, out: *mut f64) -> EsStatus {
    special(out, || specfun::zeta_int(m))
}

/// Liₙ(z) for n ≥ 1, |z| ≤ 1.
///
/// # Safety
/// `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn es_polylog(n: u32, z: f64, out: *mut f64) -> EsStatus {
    special(out, || specfun::polylog(n, z))
}

/// Cl₂(θ).
#[no_mangle]
pub extern "C" fn es_clausen2(theta: f64) -> f64 {
    catch_unwind(|| specfun::clausen2(theta)).unwrap_or(f64::NAN)
}

/// Opaque exact value: a rational combination of 1, ζ(m) and π·Cl₂(qπ).
pub struct EsClosedForm(ClosedForm);

/// Closed form of `Σ_{n≥1} [γ+ψ(1+kn)]/n²`, or of its alternating version.
///
/// # Safety
/// `out` must be valid for a write; the handle written there is released
/// with [`es_closed_form_free`].
#[no_mangle]
pub unsafe extern "C" fn es_theorem1_closed_form(k: u32, alternating: bool, out: *mut *mut EsClosedForm) -> EsStatus {
    guard(|| {
        let cf = catalog::theorem1_closed_form(k, alternating)?;
        unsafe { give(out, EsClosedForm(cf)) }
    })
}

/// Right-hand side of a catalog identity.
///
/// # Safety
/// `id` must be a NUL-terminated string; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn es_catalog_rhs(id: *const c_char, out: *mut *mut EsClosedForm) -> EsStatus {
    guard(|| {
        let id = unsafe { read_str(id, "id") }?;
        let e = catalog::get(id)?;
        unsafe { give(out, EsClosedForm(e.rhs)) }
    })
}

/// Numeric value of a closed form.
///
/// # Safety
/// `cf` must be a live handle; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn es_closed_form_eval(cf: *const EsClosedForm, out: *mut f64) -> EsStatus {
    guard(|| {
        let cf = unsafe { cf.as_ref() }.ok_or_else(|| null("closed form"))?;
        unsafe { write(out, cf_eval(&cf.0)) }
    })
}

/// Rendering such as `67/8*zeta(3) - 2*pi*Cl2(1/2*pi)`.
///
/// # Safety
/// `cf` must be a live handle; `out` must be valid for a write. The string
/// is released with [`es_string_free`].
#[no_mangle]
pub unsafe extern "C" fn es_closed_form_to_string(cf: *const EsClosedForm, out: *mut *mut c_char) -> EsStatus {
    guard(|| {
        let cf = unsafe { cf.as_ref() }.ok_or_else(|| null("closed form"))?;
        unsafe { write(out, owned_string(cf.0.to_string())) }
    })
}

/// Whether two closed forms are identical after canonicalization.
///
/// # Safety
/// Both handles must be live; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn es_closed_form_equal(
    a: *const EsClosedForm,
    b: *const EsClosedForm,
    out: *mut bool,
) -> EsStatus {
    guard(|| {
        let a = unsafe { a.as_ref() }.ok_or_else(|| null("first closed form"))?;
        let b = unsafe { b.as_ref() }.ok_or_else(|| null("second closed form"))?;
        unsafe { write(out, eulersum::closed_form::cf_equal(&a.0, &b.0)) }
    })
}

/// # Safety
/// `cf` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn es_closed_form_free(cf: *mut EsClosedForm) {
    if !cf.is_null() {
        drop(unsafe { Box::from_raw(cf) });
    }
}

/// Number of catalog identities.
#[no_mangle]
pub extern "C" fn es_catalog_len() -> usize {
    catch_unwind(|| catalog::build_catalog().len()).unwrap_or(0)
}

/// Id of the `index`-th catalog identity.
///
/// # Safety
/// `out` must be valid for a write; the string is released with
/// [`es_string_free`].
#[no_mangle]
pub unsafe extern "C" fn es_catalog_id(index: usize, out: *mut *mut c_char) -> EsStatus {
    guard(|| {
        let cat = catalog::build_catalog();
        let e = cat
            .get(index)
            .ok_or_else(|| Fail(EsStatus::Domain, format!("index {index} out of range ({} entries)", cat.len())))?;
        unsafe { write(out, owned_string(e.id.clone())) }
    })
}

/// Plain-data summary of one verification.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct EsReport {
    pub lhs: f64,
    pub rhs: f64,
    pub abs_diff: f64,
    pub tol: f64,
    pub error_estimate: f64,
    pub seconds: f64,
    pub terms: u64,
    pub pass: bool,
}

impl From<&VerificationReport> for EsReport {
    fn from(r: &VerificationReport) -> Self {
        EsReport {
            lhs: r.lhs,
            rhs: r.rhs_value,
            abs_diff: r.abs_diff,
            tol: r.tol,
            error_estimate: r.error_estimate,
            seconds: r.seconds,
            terms: r.terms,
            pass: r.pass,
        }
    }
}

/// Verifies one identity (`tol <= 0` keeps the catalog tolerance).
///
/// A summation failure is not an error: it yields a report with
/// `pass = false` and `lhs = NaN`, and its reason is stored as the last
/// error message.
///
/// # Safety
/// `id` must be a NUL-terminated string; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn es_verify(id: *const c_char, tol: f64, out: *mut EsReport) -> EsStatus {
    guard(|| {
        let id = unsafe { read_str(id, "id") }?;
        let r = catalog::verify(id, (tol > 0.0).then_some(tol))?;
        unsafe { write(out, EsReport::from(&r)) }?;
        if let Some(note) = r.note.filter(|_| !r.pass) {
            set_error(note);
        }
        Ok(())
    })
}

/// Opaque batch of verification reports.
pub struct EsReportSet(Vec<VerificationReport>);

/// Verifies the whole catalog plus the general-k rows with `jobs` worker
/// threads (0 uses all cores).
///
/// # Safety
/// `out` must be valid for a write; the handle is released with
/// [`es_report_set_free`].
#[no_mangle]
pub unsafe extern "C" fn es_verify_all(jobs: usize, out: *mut *mut EsReportSet) -> EsStatus {
    guard(|| {
        let opts = VerifyOptions {
            jobs: (jobs > 0).then_some(jobs),
            ..VerifyOptions::default()
        };
        let reports = catalog::verify_all_with(&opts);
        unsafe { give(out, EsReportSet(reports)) }
    })
}

/// Number of reports in a set (0 for NULL).
///
/// # Safety
/// `set` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn es_report_set_len(set: *const EsReportSet) -> usize {
    unsafe { set.as_ref() }.map_or(0, |s| s.0.len())
}

/// The `index`-th report and, if `id_out` is not NULL, its id.
///
/// # Safety
/// `set` must be a live handle; `out` must be valid for a write; `id_out`
/// must be NULL or valid for a write (the id is released with
/// [`es_string_free`]).
#[no_mangle]
pub unsafe extern "C" fn es_report_set_get(
    set: *const EsReportSet,
    index: usize,
    out: *mut EsReport,
    id_out: *mut *mut c_char,
) -> EsStatus {
    guard(|| {
        let set = unsafe { set.as_ref() }.ok_or_else(|| null("report set"))?;
        let r = set
            .0
            .get(index)
            .ok_or_else(|| Fail(EsStatus::Domain, format!("index {index} out of range ({} reports)", set.0.len())))?;
        unsafe { write(out, EsReport::from(r)) }?;
        if !id_out.is_null() {
            unsafe { id_out.write(owned_string(r.id.clone())) };
        }
        Ok(())
    })
}

/// The set as line-delimited JSON.
///
/// # Safety
/// `set` must be a live handle; `out` must be valid for a write. The
/// string is released with [`es_string_free`].
#[no_mangle]
pub unsafe extern "C" fn es_report_set_to_json(set: *const EsReportSet, out: *mut *mut c_char) -> EsStatus {
    guard(|| {
        let set = unsafe { set.as_ref() }.ok_or_else(|| null("report set"))?;
        unsafe { write(out, owned_string(catalog::format_reports(&set.0, ReportFormat::Json))) }
    })
}

/// # Safety
/// `set` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn es_report_set_free(set: *mut EsReportSet) {
    if !set.is_null() {
        drop(unsafe { Box::from_raw(set) });
    }
}
