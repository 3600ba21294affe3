//! C ABI for padelab.
//!
//! Conventions:
//! - Every fallible function returns a [`PadelabStatus`] and writes its
//!   result through an out-pointer. On failure the out-pointer is left
//!   untouched and [`padelab_last_error`] describes what went wrong.
//! - Handles (`PadelabSeries`, `PadelabRationalFunction`) are opaque and
//!   released with their `_free` function. Freeing NULL is a no-op.
//! - Strings returned through `char **` are owned by the caller and must be
//!   released with [`padelab_string_free`].
//! - Rationals cross the boundary as `"p/q"` strings; JSON documents use the
//!   same formats as the command-line tool.
//! - Panics never unwind into C: they become `PADELAB_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use padelab::contfrac::euclid_cf;
use padelab::doc::SeriesDoc;
use padelab::montessus::ExperimentConfig;
use padelab::pade::{hankel_grid_csv, pade_approximant, pade_table};
use padelab::{ComplexF, Error, FloatContext, PowerSeries, Precision, RationalFunction};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PadelabStatus {
    Ok = 0,
    /// A required pointer argument was NULL.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// Malformed or out-of-range input (the CLI's exit code 2).
    InvalidInput = 3,
    /// A mathematical degeneracy: blocked entry, singular step, near pole
    /// (the CLI's exit code 1).
    Domain = 4,
    /// Internal panic caught at the boundary.
    Panic = 5,
}

/// Truncated power series with exact rational coefficients.
pub struct PadelabSeries(PowerSeries);

/// Exact rational function, normalized so that `den(0) = 1`.
pub struct PadelabRationalFunction(RationalFunction);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior NUL");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

enum Failure {
    Null(&'static str),
    Utf8(&'static str),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

/// Runs `f`, records any failure and maps it to a status.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> PadelabStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PadelabStatus::Ok,
        Ok(Err(Failure::Null(what))) => {
            set_error(format!("null pointer: {what}"));
            PadelabStatus::NullArgument
        }
        Ok(Err(Failure::Utf8(what))) => {
            set_error(format!("invalid UTF-8 in {what}"));
            PadelabStatus::InvalidUtf8
        }
        Ok(Err(Failure::Lib(e))) => {
            set_error(e.to_string());
            if e.is_input_error() { PadelabStatus::InvalidInput } else { PadelabStatus::Domain }
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("internal panic: {msg}"));
            PadelabStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::Null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure::Utf8(what))
}

unsafe fn handle<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or(Failure::Null(what))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &'static str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Null("out"));
    }
    let c = CString::new(s).map_err(|_| Failure::Lib(Error::InvalidDocument("output contains NUL".into())))?;
    out.write(c.into_raw());
    Ok(())
}

/// Message of the last failure on this thread, or NULL. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn padelab_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn padelab_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be NULL or a pointer obtained from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn padelab_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a series from a JSON document or a builtin name (`exp`,
/// `geometric`, `geometric(a)`), expanded through `z^order`.
///
/// # Safety
/// `spec` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn padelab_series_new(
    spec: *const c_char,
    order: usize,
    out: *mut *mut PadelabSeries,
) -> PadelabStatus {
    guard(|| {
        let text = read_str(spec, "spec")?;
        let doc = if text.trim_start().starts_with('{') { SeriesDoc::from_json(text)? } else { SeriesDoc::builtin(text) };
        let s = doc.to_series(order)?;
        write_out(out, Box::into_raw(Box::new(PadelabSeries(s))), "out")
    })
}

/// # Safety
/// `s` must be NULL or a handle from [`padelab_series_new`], freed once.
#[no_mangle]
pub unsafe extern "C" fn padelab_series_free(s: *mut PadelabSeries) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Highest stored power of the series.
///
/// # Safety
/// `s` must be a valid handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn padelab_series_order(s: *const PadelabSeries, out: *mut usize) -> PadelabStatus {
    guard(|| write_out(out, handle(s, "series")?.0.order(), "out"))
}

/// Coefficient of `z^index` as a `"p/q"` string.
///
/// # Safety
/// `s` must be a valid handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn padelab_series_coeff(
    s: *const PadelabSeries,
    index: usize,
    out: *mut *mut c_char,
) -> PadelabStatus {
    guard(|| {
        let s = &handle(s, "series")?.0;
        if index > s.order() {
            return Err(Error::IndexOutOfRange { index, max: s.order() }.into());
        }
        write_string(out, s.coeff(index).to_string())
    })
}

/// The Padé approximant `[l/m]`. A block entry fails with
/// `PADELAB_STATUS_DOMAIN`.
///
/// # Safety
/// `s` must be a valid handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn padelab_pade(
    s: *const PadelabSeries,
    l: usize,
    m: usize,
    out: *mut *mut PadelabRationalFunction,
) -> PadelabStatus {
    guard(|| {
        let e = pade_approximant(&handle(s, "series")?.0, l, m)?;
        let rf = e.fraction().ok_or(Error::Blocked { l, m })?.clone();
        write_out(out, Box::into_raw(Box::new(PadelabRationalFunction(rf))), "out")
    })
}

/// # Safety
/// `rf` must be NULL or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn padelab_ratfunc_free(rf: *mut PadelabRationalFunction) {
    if !rf.is_null() {
        drop(Box::from_raw(rf));
    }
}

/// `{"num": [...], "den": [...]}` with `"p/q"` coefficients, lowest power
/// first.
///
/// # Safety
/// `rf` must be a valid handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn padelab_ratfunc_to_json(
    rf: *const PadelabRationalFunction,
    out: *mut *mut c_char,
) -> PadelabStatus {
    guard(|| {
        let rf = &handle(rf, "rational function")?.0;
        let v = serde_json::json!({"num": rf.num().coeffs(), "den": rf.den().coeffs()});
        write_string(out, v.to_string())
    })
}

/// Float value at `re + i·im`, computed at `precision_bits` (24 or 53).
///
/// # Safety
/// `rf` must be a valid handle; `out_re` and `out_im` must be writable.
#[no_mangle]
pub unsafe extern "C" fn padelab_ratfunc_eval(
    rf: *const PadelabRationalFunction,
    re: f64,
    im: f64,
    precision_bits: u32,
    out_re: *mut f64,
    out_im: *mut f64,
) -> PadelabStatus {
    guard(|| {
        let rf = &handle(rf, "rational function")?.0;
        if out_re.is_null() || out_im.is_null() {
            return Err(Failure::Null("out"));
        }
        let ctx = FloatContext::with_precision(Precision::from_bits(precision_bits)?);
        let v = rf.eval_complex(&ctx, ComplexF::new(re, im))?;
        out_re.write(v.re);
        out_im.write(v.im);
        Ok(())
    })
}

/// The Padé table up to `(l_max, m_max)` as JSON.
///
/// # Safety
/// `s` must be a valid handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn padelab_table_json(
    s: *const PadelabSeries,
    l_max: usize,
    m_max: usize,
    out: *mut *mut c_char,
) -> PadelabStatus {
    guard(|| {
        let t = pade_table(&handle(s, "series")?.0, l_max, m_max)?;
        write_string(out, t.to_json().to_string())
    })
}

/// Hankel determinant grid as CSV (rows `m`, columns `p`).
///
/// # Safety
/// `s` must be a valid handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn padelab_hankel_csv(
    s: *const PadelabSeries,
    m_max: usize,
    p_max: usize,
    out: *mut *mut c_char,
) -> PadelabStatus {
    guard(|| write_string(out, hankel_grid_csv(&handle(s, "series")?.0, m_max, p_max)))
}

/// Euclid expansion of a `"p/q"` rational: `{"q0": "...", "terms": [...]}`.
///
/// # Safety
/// `rational` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn padelab_cf_euclid_json(rational: *const c_char, out: *mut *mut c_char) -> PadelabStatus {
    guard(|| {
        let x = read_str(rational, "rational")?.parse()?;
        let cf = euclid_cf(&x);
        let terms: Vec<_> = cf.partials().iter().map(|(_, q)| q).collect();
        write_string(out, serde_json::json!({"q0": cf.q0(), "terms": terms}).to_string())
    })
}

/// Runs a row-convergence experiment from its JSON config and returns the
/// full JSON report.
///
/// # Safety
/// `config` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn padelab_montessus_json(config: *const c_char, out: *mut *mut c_char) -> PadelabStatus {
    guard(|| {
        let report = ExperimentConfig::from_json(read_str(config, "config")?)?.run()?;
        write_string(out, report.to_json().to_string())
    })
}
