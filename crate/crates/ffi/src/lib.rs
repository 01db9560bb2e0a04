//! C interface to `cod-core`.
//!
//! Designs are opaque [`CodDesign`] handles created by `cod_design_parse`,
//! `cod_design_construct` or `cod_search_min_delay` and released with
//! `cod_design_free`. Every fallible call returns a [`CodStatus`]; on
//! failure `cod_last_error_message` describes the problem. Strings handed
//! out by the library must be released with `cod_string_free`.
//!
//! Row indices are 0-based; variable indices are the 1-based labels of the
//! text format.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use cod_core::{Design, Error, SearchConfig};

/// Opaque design handle.
pub struct CodDesign(Design);

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CodStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidArgument = 4,
    NotCod = 5,
    NotBcod = 6,
    NotStandardForm = 7,
    Unreachable = 8,
    NoComplement = 9,
    /// The search ran out of its node budget.
    ResourceLimit = 10,
    /// The search proved that no design exists within the bounds.
    NoneExists = 11,
    Internal = 12,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(err: &Error) -> CodStatus {
    match err {
        Error::NotCod => CodStatus::NotCod,
        Error::NotBcod | Error::BcodShape { .. } => CodStatus::NotBcod,
        Error::NotStandardForm => CodStatus::NotStandardForm,
        Error::UnreachableVariable { .. } => CodStatus::Unreachable,
        Error::NoComplement { .. } | Error::MultipleComplements { .. } => CodStatus::NoComplement,
        Error::ResourceLimit { .. } => CodStatus::ResourceLimit,
        Error::SearchFailed(_) | Error::ConstructionFailed(_) => CodStatus::Internal,
        _ => CodStatus::InvalidArgument,
    }
}

/// Runs `f`, turning errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), (CodStatus, String)>) -> CodStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CodStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            CodStatus::Internal
        }
    }
}

fn fail(err: Error) -> (CodStatus, String) {
    (status_of(&err), err.to_string())
}

fn null(what: &str) -> (CodStatus, String) {
    (CodStatus::NullPointer, format!("{what} is null"))
}

unsafe fn design<'a>(d: *const CodDesign) -> Result<&'a Design, (CodStatus, String)> {
    d.as_ref().map(|d| &d.0).ok_or_else(|| null("design"))
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), (CodStatus, String)> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

fn boxed(d: Design) -> *mut CodDesign {
    Box::into_raw(Box::new(CodDesign(d)))
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// Message for the last failed call on this thread, or null. Valid until
/// the next library call on the same thread.
#[no_mangle]
pub extern "C" fn cod_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parse a design from its text form.
///
/// # Safety
/// `text` must be a valid NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cod_design_parse(text: *const c_char, out: *mut *mut CodDesign) -> CodStatus {
    guard(|| {
        if text.is_null() {
            return Err(null("text"));
        }
        let text = CStr::from_ptr(text)
            .to_str()
            .map_err(|e| (CodStatus::InvalidUtf8, e.to_string()))?;
        let d = cod_core::parse_design(text).map_err(|e| (CodStatus::ParseError, e.to_string()))?;
        write(out, boxed(d))
    })
}

/// Build the delay-`2^m` balanced design on `2m` columns.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cod_design_construct(m: usize, out: *mut *mut CodDesign) -> CodStatus {
    guard(|| {
        let d = cod_core::construct_bcod(m).map_err(fail)?;
        write(out, boxed(d))
    })
}

/// # Safety
/// `d` must come from this library and not have been freed; null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn cod_design_free(d: *mut CodDesign) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Text form of a design; release with `cod_string_free`.
///
/// # Safety
/// `d` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cod_design_serialize(d: *const CodDesign, out: *mut *mut c_char) -> CodStatus {
    guard(|| {
        let d = design(d)?;
        write(out, c_string(cod_core::serialize_design(d)))
    })
}

/// # Safety
/// `s` must come from this library and not have been freed; null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn cod_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Rows, columns and variable count.
///
/// # Safety
/// `d` must be a live handle; the outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn cod_design_dims(
    d: *const CodDesign,
    p: *mut usize,
    n: *mut usize,
    k: *mut u32,
) -> CodStatus {
    guard(|| {
        let d = design(d)?;
        write(p, d.rows())?;
        write(n, d.cols())?;
        write(k, d.vars())
    })
}

/// # Safety
/// `d` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cod_is_cod(d: *const CodDesign, out: *mut bool) -> CodStatus {
    guard(|| {
        let d = design(d)?;
        write(out, cod_core::is_cod(d).is_cod())
    })
}

/// False for anything that is not a balanced design, including non-CODs.
///
/// # Safety
/// `d` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cod_is_bcod(d: *const CodDesign, out: *mut bool) -> CodStatus {
    guard(|| {
        let d = design(d)?;
        write(out, cod_core::is_bcod(d).is_ok_and(|r| r.is_bcod()))
    })
}

/// Smallest variable `j` whose B_j form the design is already in, or 0.
///
/// # Safety
/// `d` must be a live handle; `witness` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cod_standard_form_witness(d: *const CodDesign, witness: *mut u32) -> CodStatus {
    guard(|| {
        let d = design(d)?;
        let w = cod_core::is_standard_form(d).map_err(fail)?;
        write(witness, w.unwrap_or(0))
    })
}

/// Reduce a standard-form design to B_var form. Writes the new design and,
/// if `ops` is not null, the op script (1-based, one op per line).
///
/// # Safety
/// `d` must be a live handle; `out` must be writable; `ops` may be null.
#[no_mangle]
pub unsafe extern "C" fn cod_to_bj_form(
    d: *const CodDesign,
    var: u32,
    out: *mut *mut CodDesign,
    ops: *mut *mut c_char,
) -> CodStatus {
    guard(|| {
        let d = design(d)?;
        let (seq, reduced) = cod_core::to_bj_form(d, var).map_err(fail)?;
        if out.is_null() {
            return Err(null("output pointer"));
        }
        if !ops.is_null() {
            ops.write(c_string(cod_core::format_ops(&seq)));
        }
        write(out, boxed(reduced))
    })
}

/// Complement row of `row` (both 0-based).
///
/// # Safety
/// `d` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cod_find_complement(d: *const CodDesign, row: usize, out: *mut usize) -> CodStatus {
    guard(|| {
        let d = design(d)?;
        write(out, cod_core::find_complement(d, row).map_err(fail)?)
    })
}

/// Left-pattern coverage check behind `p >= 2^m`.
///
/// # Safety
/// `d` must be a live handle; the outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn cod_verify_delay_bound(
    d: *const CodDesign,
    passed: *mut bool,
    with_equality: *mut bool,
) -> CodStatus {
    guard(|| {
        let d = design(d)?;
        let rep = cod_core::verify_delay_bound(d).map_err(fail)?;
        write(passed, rep.passed())?;
        write(with_equality, rep.meets_with_equality())
    })
}

/// # Safety
/// `d` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cod_is_atomic(d: *const CodDesign, out: *mut bool) -> CodStatus {
    guard(|| {
        let d = design(d)?;
        write(out, cod_core::is_atomic(d).map_err(fail)?)
    })
}

/// Radon–Hurwitz exponent of `n >= 1`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cod_delta(n: usize, out: *mut u32) -> CodStatus {
    guard(|| write(out, cod_core::delta(n).map_err(fail)?))
}

/// Delay lower bound for maximum-rate designs on `n` columns.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cod_max_rate_delay_bound(n: usize, out: *mut u64) -> CodStatus {
    guard(|| write(out, cod_core::max_rate_delay_bound(n).map_err(fail)?))
}

/// Exhaustive minimum-delay search. Returns `NoneExists` when no balanced
/// design with at most `p_max` rows exists. `node_limit` 0 means the
/// default budget.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cod_search_min_delay(
    n: usize,
    p_max: usize,
    workers: usize,
    node_limit: u64,
    out: *mut *mut CodDesign,
) -> CodStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("output pointer"));
        }
        let mut cfg = SearchConfig::new(n, p_max);
        cfg.parallel_width = workers;
        if node_limit > 0 {
            cfg.node_limit = node_limit;
        }
        match cod_core::search_min_delay(&cfg).map_err(fail)? {
            Some(d) => write(out, boxed(d)),
            None => Err((
                CodStatus::NoneExists,
                format!("no balanced design with n={n} and p<={p_max}"),
            )),
        }
    })
}
